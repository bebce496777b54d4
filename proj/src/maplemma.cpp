#include "rcf/maplemma.hpp"
#include "rcf/parse.hpp"

namespace rcf {

namespace {

Rat max_rat(const Rat &a, const Rat &b) { return a < b ? b : a; }

Rat eval_rat(const IntPoly2 &p, const Rat &x0, const Rat &y0)
{
	Int s = int_pow(x0.get_den(), std::max(deg_x(p), 0));
	return eval(at_x(p, x0), y0) / Rat(s);
}

/* Restriction of a/b to a line, as a reduced quotient of integer
 * polynomials in the line parameter; empty if the denominator vanishes
 * identically there. */
std::optional<std::pair<IntPoly1, IntPoly1>> restrict_ratio(const IntPoly2 &a, const IntPoly2 &b,
                                                            Var fixed, const Rat &v0)
{
	auto at = [&](const IntPoly2 &p) { return fixed == Var::y ? at_y(p, v0) : at_x(p, v0); };
	int da = fixed == Var::y ? std::max(a.degree(), 0) : std::max(deg_x(a), 0);
	int db = fixed == Var::y ? std::max(b.degree(), 0) : std::max(deg_x(b), 0);
	/* at() scales by den^deg; undo the difference */
	IntPoly1 na = at(a) * IntPoly1::constant(int_pow(v0.get_den(), db));
	IntPoly1 nb = at(b) * IntPoly1::constant(int_pow(v0.get_den(), da));
	if (nb.is_zero())
		return std::nullopt;
	IntPoly1 g = ring_gcd(na, nb);
	if (!na.is_zero() && g.degree() >= 0 && !(g == IntPoly1(1))) {
		na = exact_div(na, g);
		nb = exact_div(nb, g);
	}
	if (na.is_zero())
		nb = IntPoly1(1);
	if (lead_sign(nb) < 0) {
		na = -na;
		nb = -nb;
	}
	return std::make_pair(na, nb);
}

bool constant_ratio(const std::pair<IntPoly1, IntPoly1> &r)
{
	return r.first.degree() <= 0 && r.second.degree() <= 0;
}

/* d z - n as a polynomial in x (first image coordinate) or y (second) */
IntPoly2 level_line(const std::pair<IntPoly1, IntPoly1> &r, Var v)
{
	Int n = r.first.is_zero() ? Int(0) : r.first[0], d = r.second[0];
	IntPoly1 lin(std::vector<Int>{Int(-n), d});
	return v == Var::x ? from_x(lin) : from_y(lin);
}

IntPoly2 curve_normal_form(const IntPoly2 &G)
{
	if (G.degree() >= 1)
		return squarefree_part(G);
	return from_x(squarefree_part(G[0]));
}

/* Res_t(z1 b1 - a1, z2 b2 - a2) in (z1, z2) = (x, y) */
IntPoly2 implicit_curve(const std::pair<IntPoly1, IntPoly1> &r1,
                        const std::pair<IntPoly1, IntPoly1> &r2)
{
	if (constant_ratio(r1))
		return level_line(r1, Var::x);
	if (constant_ratio(r2))
		return level_line(r2, Var::y);
	int n1 = std::max(r1.first.degree(), r1.second.degree());
	int n2 = std::max(r2.first.degree(), r2.second.degree());
	std::vector<IntPoly2> c1, c2;
	for (int i = 0; i <= n1; i++)
		c1.push_back(from_x(IntPoly1(std::vector<Int>{Int(-r1.first[i]), r1.second[i]})));
	for (int i = 0; i <= n2; i++)
		c2.push_back(IntPoly2(std::vector<IntPoly1>{IntPoly1::constant(Int(-r2.first[i])),
		                                            IntPoly1::constant(r2.second[i])}));
	IntPoly2 G = resultant(IntPoly3(std::move(c1)), IntPoly3(std::move(c2)));
	if (G.is_zero())
		throw DomainError("implicit curve elimination vanished");
	return curve_normal_form(G);
}

/* Branch for t = p/q along the graph of f. */
Branch along(const EndCell &c, const Branch &f, const IntPoly2 &p, const IntPoly2 &q)
{
	IntPoly2 qf = f.defining;
	IntPoly2 g = ring_gcd(qf, q);
	if (g.degree() >= 1) {
		Rat x0 = f.bound + 1;
		if (sign_at2(g, RealAlg(x0), value_at(f, x0)) == 0)
			throw DomainError("denominator identically zero along the curve");
		qf = exact_div(qf, g);
	}
	Rat B = max_rat(c.alpha, f.bound);
	IntPoly1 poles = resultant(qf, q);
	if (poles.is_zero())
		throw DomainError("denominator identically zero along the curve");
	if (poles.degree() >= 1)
		B = max_rat(B, Rat(root_magnitude_bound(poles)));
	/* Res_u(qf(x, u), z q(x, u) - p(x, u)) */
	int n = std::max(p.degree(), q.degree());
	std::vector<IntPoly2> t;
	for (int j = 0; j <= n; j++)
		t.push_back(IntPoly2(std::vector<IntPoly1>{-p[j], q[j]}));
	std::vector<IntPoly2> u;
	for (const auto &a : qf.coeffs())
		u.push_back(from_x(a));
	IntPoly2 P = resultant(IntPoly3(std::move(u)), IntPoly3(std::move(t)));
	return make_branch(P, B, [&](const Rat &x0) {
		Approx V = value_at(f, x0).approx();
		Interval X(x0);
		Approx num([p, V, X](unsigned l) { return eval_box(p, X, V.at(l)); });
		Approx den([q, V, X](unsigned l) { return eval_box(q, X, V.at(l)); });
		return num / den;
	});
}

/* f + dir / x^k for the smallest tried k staying strictly inside every
 * limit (below them for dir > 0, above for dir < 0); keeps the degree of f
 * where a midpoint would multiply degrees. */
std::optional<std::pair<Branch, Rat>> offset_within(const Branch &f, int dir,
                                                    const std::vector<Branch> &limits)
{
	for (int k : {0, 1, 2, 3, 4, 6, 8, 12, 16}) {
		Branch e = rational_branch(IntPoly1::constant(Int(dir)), IntPoly1::monomial(Int(1), k));
		Branch g = branch_combine(BranchOp::add, f, e);
		Rat B = g.bound;
		bool ok = true;
		for (const auto &L : limits) {
			auto o = dir > 0 ? compare_eventually(g, L) : compare_eventually(L, g);
			B = max_rat(B, o.bound);
			if (o.ord >= 0) {
				ok = false;
				break;
			}
		}
		if (ok)
			return std::make_pair(g, B);
	}
	return std::nullopt;
}

int side_of(const Branch &b, const RealAlg &X, const RealAlg &Y)
{
	return from_ordering(compare(Y, value_at(b, X)));
}

} // namespace

std::string to_string(const RationalMap2 &F)
{
	return "map(" + to_string(F.p1) + ", " + to_string(F.q1) + ", " + to_string(F.p2) + ", " +
	       to_string(F.q2) + ")";
}

RationalMap2 parse_map(std::string_view s)
{
	auto a = parse_call(s, "map");
	if (a.size() != 4)
		throw ParseError("map(...) takes four arguments");
	RatFunc2 d1 = parse_ratfunc(a[1]), d2 = parse_ratfunc(a[3]);
	if (d1.is_zero() || d2.is_zero())
		throw ParseError("map denominators must be nonzero");
	RatFunc2 f1 = parse_ratfunc(a[0]) / d1, f2 = parse_ratfunc(a[2]) / d2;
	return RationalMap2{f1.num, f1.den, f2.num, f2.den};
}

std::optional<std::pair<Rat, Rat>> apply_map(const RationalMap2 &F, const Rat &x, const Rat &y)
{
	Rat d1 = eval_rat(F.q1, x, y), d2 = eval_rat(F.q2, x, y);
	if (sgn(d1) == 0 || sgn(d2) == 0)
		return std::nullopt;
	return std::make_pair(Rat(eval_rat(F.p1, x, y) / d1), Rat(eval_rat(F.p2, x, y) / d2));
}

std::string to_string(VerdictKind k) { return k == VerdictKind::identity ? "identity" : "disjoint"; }

std::string to_string(CaseTag t)
{
	switch (t) {
	case CaseTag::case1_lowdim: return "Case1-lowdim";
	case CaseTag::case2_identity: return "Case2-identity";
	case CaseTag::case3_escape: return "Case3-bounded-escape";
	case CaseTag::case4_tube: return "Case4-tube";
	case CaseTag::fix_avoid: return "FixAvoid";
	}
	return "?";
}

VerdictKind parse_verdict_kind(std::string_view s)
{
	if (s == "identity")
		return VerdictKind::identity;
	if (s == "disjoint")
		return VerdictKind::disjoint;
	throw ParseError("unknown verdict '" + std::string(s) + "'");
}

CaseTag parse_case_tag(std::string_view s)
{
	for (CaseTag t : {CaseTag::case1_lowdim, CaseTag::case2_identity, CaseTag::case3_escape,
	                  CaseTag::case4_tube, CaseTag::fix_avoid})
		if (to_string(t) == s)
			return t;
	throw ParseError("unknown case tag '" + std::string(s) + "'");
}

bool is_identity_map(const RationalMap2 &F)
{
	return (F.p1 - var_x2() * F.q1).is_zero() && (F.p2 - var_y2() * F.q2).is_zero();
}

IntPoly2 jacobian_numerator(const RationalMap2 &F)
{
	IntPoly2 a = diff_x(F.p1) * F.q1 - F.p1 * diff_x(F.q1);
	IntPoly2 b = diff_y(F.p1) * F.q1 - F.p1 * diff_y(F.q1);
	IntPoly2 c = diff_x(F.p2) * F.q2 - F.p2 * diff_x(F.q2);
	IntPoly2 d = diff_y(F.p2) * F.q2 - F.p2 * diff_y(F.q2);
	return a * d - b * c;
}

std::optional<IntPoly2> image_dimension_deficient(const RationalMap2 &F)
{
	if (!jacobian_numerator(F).is_zero())
		return std::nullopt;
	const Rat lines[] = {Rat(1, 2), Rat(1, 3), Rat(2, 3), Rat(1, 5), Rat(3, 7), Rat(2), Rat(3),
	                     Rat(5), Rat(-1), Rat(7, 2)};
	std::optional<std::pair<IntPoly1, IntPoly1>> point1, point2;
	for (Var fixed : {Var::y, Var::x})
		for (const Rat &v0 : lines) {
			auto r1 = restrict_ratio(F.p1, F.q1, fixed, v0);
			auto r2 = restrict_ratio(F.p2, F.q2, fixed, v0);
			if (!r1 || !r2)
				continue;
			if (constant_ratio(*r1) && constant_ratio(*r2)) {
				point1 = r1;
				point2 = r2;
				continue;
			}
			return implicit_curve(*r1, *r2);
		}
	if (point1)
		return level_line(*point1, Var::x); /* F is constant */
	throw DomainError("map is undefined on every test line");
}

EndCell avoid_curve(const EndCell &c, const IntPoly2 &curve)
{
	if (curve.is_zero())
		throw DomainError("cannot avoid the zero polynomial");
	return refine_by_polynomial(c, curve).cell;
}

IntPoly2 pullback(const IntPoly2 &D, const RationalMap2 &F)
{
	int a = std::max(deg_x(D), 0), b = std::max(D.degree(), 0);
	auto powers = [](const IntPoly2 &p, int n) {
		std::vector<IntPoly2> v{constant2(Int(1))};
		for (int i = 1; i <= n; i++)
			v.push_back(v.back() * p);
		return v;
	};
	auto P1 = powers(F.p1, a), Q1 = powers(F.q1, a), P2 = powers(F.p2, b), Q2 = powers(F.q2, b);
	IntPoly2 out;
	for (int j = 0; j <= D.degree(); j++) {
		IntPoly2 row;
		for (int i = 0; i <= D[j].degree(); i++)
			if (sgn(D[j][i]) != 0)
				row += P1[i] * Q1[a - i] * constant2(D[j][i]);
		if (!row.is_zero())
			out += row * P2[j] * Q2[b - j];
	}
	return out;
}

std::pair<Branch, Branch> mu_nu(const EndCell &c, const Branch &f, const RationalMap2 &F)
{
	return {along(c, f, F.p1, F.q1), along(c, f, F.p2, F.q2)};
}

Branch pushforward_curve(const Branch &, const Branch &mu, const Branch &nu)
{
	if (monotone_eventually(mu) != Monotone::increasing ||
	    limit_at_infinity(mu).kind != Limit::plus_infinity)
		throw DomainError("Case 3 applies instead");
	return compose_branch(nu, invert_branch(mu));
}

std::optional<LemmaVerdict> case3_escape(const EndCell &c, const Branch &f, const RationalMap2 &F)
{
	Branch mu = mu_nu(c, f, F).first;
	Limit L = limit_at_infinity(mu);
	if (L.kind == Limit::plus_infinity)
		return std::nullopt;
	Rat beta(1);
	if (L.kind == Limit::finite)
		beta = max_rat(beta, Rat(floor_rat(L.value.hi()) + 1));
	/* F1 < beta  <=>  (beta q1 - p1) q1 > 0 */
	IntPoly2 T = (F.q1 * constant2(beta.get_num()) - F.p1) * F.q1;
	auto r = strip_containing(c, T, f);
	if (!r || r->sign != 1)
		return std::nullopt;
	LemmaVerdict v;
	v.kind = VerdictKind::disjoint;
	v.tag = CaseTag::case3_escape;
	v.cell = bump_x_bound(r->cell, beta);
	v.witness = f;
	v.beta = beta;
	return v;
}

std::optional<LemmaVerdict> case4_tube(const EndCell &c, const Branch &f, const Branch &fstar,
                                       const RationalMap2 &F, const Branch &mu, const Branch &nu)
{
	auto o = compare_eventually(f, fstar);
	if (o.ord == 0)
		return std::nullopt;
	bool up = o.ord < 0;
	const std::pair<Rat, Rat> ratios[] = {{Rat(1, 2), Rat(2)}, {Rat(1, 3), Rat(3, 2)},
	                                      {Rat(2, 3), Rat(3)}};
	for (const auto &[rn, rf] : ratios) {
		Branch near = branch_combine(BranchOp::mix, f, fstar, rn);
		Branch far = branch_combine(BranchOp::mix, f, fstar, rf);
		Branch phi0 = up ? near : far, phi1 = up ? far : near;
		Rat gamma = max_rat(phi0.bound, phi1.bound);
		gamma = max_rat(gamma, compare_eventually(phi0, phi1).bound);
		gamma = max_rat(gamma, compare_eventually(phi0, fstar).bound);
		gamma = max_rat(gamma, compare_eventually(fstar, phi1).bound);
		gamma = Rat(ceil_rat(gamma));

		/* a strip around f on which F avoids X = gamma and the graphs of
		 * phi0, phi1 */
		EndCell s = c;
		bool ok = true;
		for (const IntPoly2 &P :
		     {IntPoly2(F.q1 * F.q2), IntPoly2(F.q1 * constant2(gamma.get_num()) - F.p1),
		      pullback(phi0.defining, F), pullback(phi1.defining, F)}) {
			auto r = strip_containing(s, P, f);
			if (!r) {
				ok = false;
				break;
			}
			s = r->cell;
		}
		if (!ok)
			continue;

		Branch g0, g1;
		Rat B = max_rat(s.alpha, gamma);
		auto lo_side = up ? std::vector<Branch>{s.lower} : std::vector<Branch>{s.lower, phi1};
		auto hi_side = up ? std::vector<Branch>{s.upper, phi0} : std::vector<Branch>{s.upper};
		auto o0 = offset_within(f, -1, lo_side), o1 = offset_within(f, 1, hi_side);
		if (o0 && o1) {
			g0 = o0->first;
			g1 = o1->first;
			B = max_rat(B, max_rat(o0->second, o1->second));
		} else if (up) {
			Branch cap = branch_min({s.upper, phi0});
			g1 = branch_combine(BranchOp::mix, f, cap, Rat(1, 2));
			g0 = branch_combine(BranchOp::mix, f, s.lower, Rat(1, 2));
			B = max_rat(B, max_rat(cap.bound, compare_eventually(g1, phi0).bound));
		} else {
			Branch cup = branch_max({s.lower, phi1});
			g0 = branch_combine(BranchOp::mix, f, cup, Rat(1, 2));
			g1 = branch_combine(BranchOp::mix, f, s.upper, Rat(1, 2));
			B = max_rat(B, max_rat(cup.bound, compare_eventually(phi1, g0).bound));
		}
		B = max_rat(B, compare_eventually(g0, f).bound);
		B = max_rat(B, compare_eventually(f, g1).bound);
		EndCell cell = subcell(s, g0, g1);
		cell = bump_x_bound(cell, B);

		/* one point of the cell mapped into the target tube; connectivity
		 * does the rest */
		Rat x0 = max_rat(cell.alpha, max_rat(mu.bound, nu.bound)) + 1;
		bool certified = false;
		for (int k = 0; k < 8 && !certified; k++, x0 *= 2) {
			RealAlg X = value_at(mu, x0), Y = value_at(nu, x0);
			if (compare(X, gamma) <= 0)
				continue;
			certified = side_of(phi0, X, Y) > 0 && side_of(phi1, X, Y) < 0;
		}
		if (!certified)
			continue;
		LemmaVerdict v;
		v.kind = VerdictKind::disjoint;
		v.tag = CaseTag::case4_tube;
		v.cell = cell;
		v.witness = f;
		v.phi0 = phi0;
		v.phi1 = phi1;
		v.gamma = gamma;
		return v;
	}
	return std::nullopt;
}

LemmaVerdict classify(const EndCell &c0, const RationalMap2 &F)
{
	if (F.q1.is_zero() || F.q2.is_zero())
		throw DomainError("map has a zero denominator");
	LemmaVerdict v;
	if (is_identity_map(F)) {
		v.kind = VerdictKind::identity;
		v.tag = CaseTag::case2_identity;
		v.cell = c0;
		return v;
	}
	EndCell c = avoid_curve(c0, F.q1 * F.q2);
	if (auto G = image_dimension_deficient(F)) {
		v.kind = VerdictKind::disjoint;
		v.tag = CaseTag::case1_lowdim;
		v.cell = avoid_curve(c, *G);
		return v;
	}
	for (const IntPoly2 &fix : {IntPoly2(F.p1 - var_x2() * F.q1), IntPoly2(F.p2 - var_y2() * F.q2)})
		if (!fix.is_zero())
			c = avoid_curve(c, fix);

	std::vector<std::pair<std::string, std::function<Branch()>>> curves = {
		{"midline 1/2", [&] { return midline(c, Rat(1, 2)); }},
		{"midline 1/4", [&] { return midline(c, Rat(1, 4)); }},
		{"midline 3/4", [&] { return midline(c, Rat(3, 4)); }},
		{"diagonal 1", [&] { return diagonal_curve(c, 1); }},
		{"diagonal 2", [&] { return diagonal_curve(c, 2); }},
		{"diagonal 3", [&] { return diagonal_curve(c, 3); }},
	};
	std::string log;
	for (const auto &[name, make] : curves) {
		try {
			Branch f = make();
			if (auto r = case3_escape(c, f, F)) {
				r->curve = name;
				return *r;
			}
			auto [mu, nu] = mu_nu(c, f, F);
			Branch fstar = pushforward_curve(f, mu, nu);
			if (auto r = case4_tube(c, f, fstar, F, mu, nu)) {
				r->curve = name;
				return *r;
			}
			log += "; " + name + ": invariant";
		} catch (const CurveSearchExhausted &) {
			throw;
		} catch (const DomainError &e) {
			log += "; " + name + ": " + e.what();
		}
	}
	throw CurveSearchExhausted("curve search exhausted for " + to_string(F) + " on " +
	                           to_string(c) + log);
}

bool check_verdict(const LemmaVerdict &v, const RationalMap2 &F, int n, unsigned seed)
{
	if (v.kind == VerdictKind::identity)
		return is_identity_map(F);
	if (!is_valid_cell(v.cell))
		return false;
	for (auto [x0, y0] : interior_samples(v.cell, n, seed)) {
		auto img = apply_map(F, x0, y0);
		if (!img)
			return false;
		RealAlg X(img->first), Y(img->second);
		if (contains(v.cell, X, Y))
			return false;
		if (v.tag == CaseTag::case3_escape && !(v.beta && img->first < *v.beta && *v.beta <= v.cell.alpha))
			return false;
		if (v.tag == CaseTag::case4_tube) {
			if (!v.phi0 || !v.phi1 || !v.gamma || !(img->first > *v.gamma))
				return false;
			if (!(side_of(*v.phi0, X, Y) > 0 && side_of(*v.phi1, X, Y) < 0))
				return false;
			RealAlg sx(x0);
			bool below = compare(value_at(v.cell.upper, sx), value_at(*v.phi0, sx)) < 0;
			bool above = compare(value_at(*v.phi1, sx), value_at(v.cell.lower, sx)) < 0;
			if (!below && !above)
				return false;
		}
	}
	return true;
}

} // namespace rcf
