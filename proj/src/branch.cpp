#include "rcf/branch.hpp"
#include "rcf/parse.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace rcf {

namespace {

Rat max_rat(const Rat &a, const Rat &b) { return a < b ? b : a; }

Rat ceil_int(const Rat &r) { return Rat(ceil_rat(r)); }

void raise_to_roots(Rat &B, const IntPoly1 &p)
{
	if (p.degree() >= 1)
		B = max_rat(B, Rat(root_magnitude_bound(p)));
}

/* q(x, u) with u the eliminated variable; coefficients live in Z[x, z]
 * (an IntPoly2 with z as the outer variable). */
IntPoly3 in_aux(const IntPoly2 &q)
{
	std::vector<IntPoly2> c;
	for (const auto &a : q.coeffs())
		c.push_back(from_x(a));
	return IntPoly3(std::move(c));
}

IntPoly2 z_times(const Int &m) { return IntPoly2::monomial(IntPoly1::constant(m), 1); }

/* Drops a factor z from q when the branch is known to be nonzero. */
IntPoly2 strip_z(IntPoly2 q)
{
	while (q.degree() >= 1 && q[0].is_zero())
		q = IntPoly2(std::vector<IntPoly1>(q.coeffs().begin() + 1, q.coeffs().end()));
	return q;
}

Approx scaled(const Approx &a, const Rat &c) { return Approx::exact(c) * a; }

bool eventually_zero(const Branch &b)
{
	return compare_eventually(b, constant_branch(Rat(0))).ord == 0;
}

} // namespace

std::string to_string(const Branch &b)
{
	return "branch(" + to_string(b.defining, 'x', 'z') + ", " + std::to_string(b.index) + ", " +
	       to_string(b.bound) + ")";
}

Branch parse_branch(std::string_view s)
{
	auto a = parse_call(s, "branch");
	if (a.size() != 3)
		throw ParseError("branch(...) takes three arguments");
	Branch b;
	b.defining = parse_poly2(a[0]);
	if (b.defining.degree() < 1)
		throw ParseError("branch polynomial must involve z: '" + a[0] + "'");
	b.index = static_cast<int>(parse_long(a[1]));
	if (b.index < 0)
		throw ParseError("negative branch index");
	b.bound = parse_rat(trim(a[2]));
	return b;
}

IntPoly2 branch_normal_form(const IntPoly2 &q)
{
	if (q.degree() < 1)
		throw DomainError("polynomial is constant in z: " + to_string(q, 'x', 'z'));
	IntPoly2 r = squarefree_part(q);
	long bits = 0;
	for (const auto &c : r.coeffs())
		for (const auto &a : c.coeffs())
			bits = std::max<long>(bits, mpz_sizeinbase(a.get_mpz_t(), 2));
	check_coeff_bits(bits);
	return r;
}

Rat branch_bound(const IntPoly2 &q)
{
	Rat B(1);
	raise_to_roots(B, q.lc());
	raise_to_roots(B, content(q));
	if (q.degree() >= 1)
		raise_to_roots(B, resultant(q, derivative(q)));
	IntPoly2 qx = diff_x(q);
	if (!qx.is_zero()) {
		/* x-free factors give constant branches; the others must have no
		 * critical points past the bound */
		IntPoly2 g = ring_gcd(q, qx);
		IntPoly2 qm = g.degree() >= 1 ? exact_div(q, g) : q;
		if (qm.degree() >= 1) {
			IntPoly1 r = resultant(qm, diff_x(qm));
			if (r.is_zero())
				throw DomainError("critical-point resultant vanished for " + to_string(q, 'x', 'z'));
			raise_to_roots(B, r);
		}
	}
	return B;
}

BranchSet branches_at_infinity(const IntPoly2 &q)
{
	IntPoly2 n = branch_normal_form(q);
	Rat B = branch_bound(n);
	raise_to_roots(B, content(q));
	BranchSet out;
	out.bound = B;
	int m = static_cast<int>(RealAlg::roots(at_x(n, B + 1)).size());
	for (int i = 0; i < m; i++)
		out.branches.push_back(Branch{n, i, B});
	return out;
}

Branch constant_branch(const Rat &c)
{
	return Branch{IntPoly2(std::vector<IntPoly1>{IntPoly1::constant(Int(-c.get_num())),
	                                             IntPoly1::constant(c.get_den())}),
	              0, Rat(1)};
}

Branch rational_branch(const IntPoly1 &num, const IntPoly1 &den)
{
	if (den.is_zero())
		throw DomainError("division by zero");
	IntPoly1 g = ring_gcd(num, den);
	IntPoly1 n = num, d = den;
	if (g.degree() >= 1) {
		n = exact_div(num, g);
		d = exact_div(den, g);
	}
	IntPoly2 q = branch_normal_form(IntPoly2(std::vector<IntPoly1>{-n, d}));
	return Branch{q, 0, branch_bound(q)};
}

Branch make_branch(const IntPoly2 &P, const Rat &min_bound,
                   const std::function<Approx(const Rat &)> &witness)
{
	IntPoly2 q = branch_normal_form(P);
	Rat B = max_rat(branch_bound(q), ceil_int(min_bound));
	Rat x0 = B + 1;
	IntPoly1 g = at_x(q, x0);
	RealAlg v = RealAlg::resolve(g, witness(x0));
	auto roots = RealAlg::roots(g);
	for (size_t i = 0; i < roots.size(); i++)
		if (compare(roots[i], v) == 0)
			return Branch{q, static_cast<int>(i), B};
	throw DomainError("witness value is not a root of " + to_string(q, 'x', 'z'));
}

Branch with_bound(Branch b, const Rat &n)
{
	b.bound = max_rat(b.bound, ceil_int(n));
	return b;
}

RealAlg value_at(const Branch &b, const Rat &x0)
{
	if (x0 <= b.bound)
		throw DomainError("sample " + to_string(x0) + " is not beyond the branch bound " +
		                  to_string(b.bound));
	auto roots = RealAlg::roots(at_x(b.defining, x0));
	if (b.index >= static_cast<int>(roots.size()))
		throw DomainError("branch index " + std::to_string(b.index) + " out of range at x = " +
		                  to_string(x0));
	return roots[b.index];
}

Approx enclosure_at(const Branch &b, const Approx &X)
{
	return Approx([b, X](unsigned l) {
		Rat w(Int(1), Int(1) << l);
		for (unsigned k = l;; k++) {
			Interval I = X.at(k);
			if (I.lo > b.bound) {
				/* constant or monotone past the bound */
				Interval lo = value_at(b, I.lo).refined(w).interval();
				if (I.lo == I.hi)
					return lo;
				Interval hi = value_at(b, I.hi).refined(w).interval();
				return hull(lo, hi);
			}
			if (k > l + 4 * kMaxApproxLevel)
				throw DomainError("point does not lie beyond the branch bound");
		}
	});
}

RealAlg value_at(const Branch &b, const RealAlg &X)
{
	if (X.is_rational())
		return value_at(b, X.rational());
	/* Res_x(p_X(x), q(x, z)) */
	IntPoly2 s = swap_xy(b.defining);
	std::vector<IntPoly1> c;
	for (const auto &a : X.defining().coeffs())
		c.push_back(IntPoly1::constant(a));
	IntPoly1 r = resultant(IntPoly2(std::move(c)), s);
	return RealAlg::resolve(r, enclosure_at(b, X.approx()));
}

EventualOrder compare_eventually(const Branch &b1, const Branch &b2)
{
	Rat B = max_rat(b1.bound, b2.bound);
	if (b1.defining == b2.defining)
		return {to_ordering(b1.index - b2.index), B};
	IntPoly2 g = ring_gcd(b1.defining, b2.defining);
	if (g.degree() <= 0) {
		raise_to_roots(B, resultant(b1.defining, b2.defining));
	} else {
		/* both may be branches of the common factor: separate all branches
		 * of the union */
		IntPoly2 u = b1.defining * exact_div(b2.defining, g);
		B = max_rat(B, branch_bound(u));
	}
	Rat x0 = B + 1;
	return {compare(value_at(b1, x0), value_at(b2, x0)), B};
}

Limit limit_at_infinity(const Branch &b)
{
	const IntPoly2 &q = b.defining;
	int d = deg_x(q);
	std::vector<Int> lf;
	for (const auto &c : q.coeffs())
		lf.push_back(c[d]);
	IntPoly1 ell(std::move(lf));
	/* a finite limit L satisfies ell(L) = 0 */
	std::vector<RealAlg> roots;
	if (ell.degree() >= 1)
		roots = RealAlg::roots(ell);
	std::vector<Rat> sep;
	if (roots.empty()) {
		sep.push_back(Rat(0));
	} else {
		sep.push_back(floor_rat(roots.front().lo()) - 1);
		for (size_t i = 1; i < roots.size(); i++)
			sep.push_back((roots[i - 1].hi() + roots[i].lo()) / 2);
		sep.push_back(ceil_rat(roots.back().hi()) + 1);
	}
	for (size_t i = 0; i < sep.size(); i++) {
		auto c = compare_eventually(b, constant_branch(sep[i])).ord;
		if (c == 0)
			return {Limit::finite, RealAlg(sep[i])};
		if (c < 0) {
			if (i == 0)
				return {Limit::minus_infinity, RealAlg()};
			return {Limit::finite, roots[i - 1]};
		}
	}
	return {Limit::plus_infinity, RealAlg()};
}

Monotone monotone_eventually(const Branch &b)
{
	Rat x0 = b.bound + 1;
	RealAlg z0 = value_at(b, x0);
	int sx = sign_at2(diff_x(b.defining), RealAlg(x0), z0);
	if (sx == 0)
		return Monotone::constant;
	int sz = sign_at2(diff_y(b.defining), RealAlg(x0), z0);
	return -sx * sz > 0 ? Monotone::increasing : Monotone::decreasing;
}

Branch branch_scale(const Branch &b, const Rat &c)
{
	if (sgn(c) == 0)
		return constant_branch(Rat(0));
	if (c == 1)
		return b;
	/* u = m z / a for c = a / m */
	const IntPoly2 &q = b.defining;
	int n = q.degree();
	Int a = c.get_num(), m = c.get_den();
	std::vector<IntPoly1> t;
	for (int j = 0; j <= n; j++)
		t.push_back(scale(q[j], Int(int_pow(m, j) * int_pow(a, n - j))));
	IntPoly2 p = branch_normal_form(IntPoly2(std::move(t)));
	Rat B = max_rat(b.bound, branch_bound(p));
	int idx = b.index;
	if (sgn(c) < 0) {
		int cnt = static_cast<int>(RealAlg::roots(at_x(p, B + 1)).size());
		idx = cnt - 1 - idx;
	}
	return Branch{p, idx, B};
}

Branch branch_combine(BranchOp op, const Branch &b1, const Branch &b2, const Rat &r)
{
	Rat c1(1), c2(1);
	switch (op) {
	case BranchOp::add:
		break;
	case BranchOp::sub:
		c2 = -1;
		break;
	case BranchOp::mix:
		c1 = 1 - r;
		c2 = r;
		break;
	case BranchOp::mul: {
		if (eventually_zero(b1) || eventually_zero(b2))
			return constant_branch(Rat(0));
		/* Res_u(q1(x, u), u^n q2(x, z / u)) */
		IntPoly2 q1 = strip_z(b1.defining), q2 = strip_z(b2.defining);
		int n = q2.degree();
		std::vector<IntPoly2> c(n + 1);
		for (int k = 0; k <= n; k++)
			c[n - k] = IntPoly2::monomial(q2[k], k);
		IntPoly2 P = resultant(in_aux(q1), IntPoly3(std::move(c)));
		return make_branch(P, max_rat(b1.bound, b2.bound), [&](const Rat &x0) {
			return value_at(b1, x0).approx() * value_at(b2, x0).approx();
		});
	}
	case BranchOp::div: {
		auto z2 = compare_eventually(b2, constant_branch(Rat(0)));
		if (z2.ord == 0)
			throw DomainError("division by an eventually zero branch");
		if (eventually_zero(b1))
			return constant_branch(Rat(0));
		/* Res_v(q2(x, v), q1(x, z v)) */
		IntPoly2 q1 = strip_z(b1.defining), q2 = strip_z(b2.defining);
		int n = q1.degree();
		std::vector<IntPoly2> c(n + 1);
		for (int j = 0; j <= n; j++)
			c[j] = IntPoly2::monomial(q1[j], j);
		IntPoly2 P = resultant(in_aux(q2), IntPoly3(std::move(c)));
		return make_branch(P, max_rat(z2.bound, b1.bound), [&](const Rat &x0) {
			return value_at(b1, x0).approx() / value_at(b2, x0).approx();
		});
	}
	}
	if (sgn(c2) == 0)
		return branch_scale(b1, c1);
	if (sgn(c1) == 0)
		return branch_scale(b2, c2);
	/* z = (a1 u + a2 v) / m, so v = (m z - a1 u) / a2 */
	Int m = lcm(c1.get_den(), c2.get_den());
	Int a1 = c1.get_num() * (m / c1.get_den()), a2 = c2.get_num() * (m / c2.get_den());
	const IntPoly2 &q2 = b2.defining;
	int n = q2.degree();
	IntPoly3 L(std::vector<IntPoly2>{z_times(m), constant2(Int(-a1))});
	IntPoly3 acc = IntPoly3::constant(from_x(q2[n]));
	for (int k = n - 1; k >= 0; k--)
		acc = acc * L + IntPoly3::constant(from_x(scale(q2[k], int_pow(a2, n - k))));
	IntPoly2 P = resultant(in_aux(b1.defining), acc);
	return make_branch(P, max_rat(b1.bound, b2.bound), [&](const Rat &x0) {
		return scaled(value_at(b1, x0).approx(), c1) + scaled(value_at(b2, x0).approx(), c2);
	});
}

namespace {

Branch extreme(const std::vector<Branch> &bs, int want)
{
	if (bs.empty())
		throw DomainError("min/max of no branches");
	Branch best = bs[0];
	Rat B = best.bound;
	for (size_t i = 1; i < bs.size(); i++) {
		auto c = compare_eventually(bs[i], best);
		B = max_rat(B, c.bound);
		if (from_ordering(c.ord) == want)
			best = bs[i];
	}
	return with_bound(best, B);
}

} // namespace

Branch branch_min(const std::vector<Branch> &bs) { return extreme(bs, -1); }
Branch branch_max(const std::vector<Branch> &bs) { return extreme(bs, +1); }

Branch invert_branch(const Branch &b)
{
	if (monotone_eventually(b) != Monotone::increasing ||
	    limit_at_infinity(b).kind != Limit::plus_infinity)
		throw DomainError("branch not eventually increasing to +inf");
	Rat t1 = b.bound + 1;
	RealAlg y1 = value_at(b, t1);
	Rat min_bound = ceil_rat(y1.hi()) + 1;
	return make_branch(swap_xy(b.defining), min_bound, [&](const Rat &x0) {
		/* b(t1) < x0; find hi with b(hi) > x0, then bisect */
		Rat lo = t1, hi = t1 + 1;
		while (compare(value_at(b, hi), x0) <= 0) {
			lo = hi;
			hi = t1 + 2 * (hi - t1);
		}
		struct State {
			std::mutex m;
			Interval I;
		};
		auto st = std::make_shared<State>();
		st->I = Interval(lo, hi);
		Branch bb = b;
		Rat target = x0;
		return Approx([st, bb, target](unsigned l) {
			std::lock_guard<std::mutex> lock(st->m);
			Rat w(Int(1), Int(1) << l);
			while (st->I.width() > w) {
				Rat mid = st->I.mid();
				auto c = compare(value_at(bb, mid), target);
				if (c == 0)
					st->I = Interval(mid);
				else if (c < 0)
					st->I.lo = mid;
				else
					st->I.hi = mid;
			}
			return st->I;
		});
	});
}

Branch compose_branch(const Branch &outer, const Branch &inner)
{
	Limit L = limit_at_infinity(inner);
	Monotone mono = monotone_eventually(inner);
	bool ok = L.kind == Limit::plus_infinity ||
	          (L.kind == Limit::finite && compare(L.value, outer.bound) > 0);
	if (!ok)
		throw DomainError("inner branch eventually leaves the outer branch's domain");
	/* a point past which inner stays beyond outer.bound */
	Rat X = inner.bound + 1;
	if (mono == Monotone::increasing) {
		Rat step(1);
		while (compare(value_at(inner, X), outer.bound) <= 0) {
			X += step;
			step *= 2;
		}
	}
	/* Res_t(qi(x, t), qo(t, z)) */
	IntPoly2 so = swap_xy(outer.defining); /* outer variable t, coefficients in z */
	std::vector<IntPoly2> c;
	for (const auto &a : so.coeffs())
		c.push_back(from_y(a));
	IntPoly2 P = resultant(in_aux(inner.defining), IntPoly3(std::move(c)));
	return make_branch(P, X, [&](const Rat &x0) {
		return enclosure_at(outer, value_at(inner, x0).approx());
	});
}

} // namespace rcf
