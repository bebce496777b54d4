#include "rcf/endcell.hpp"
#include "rcf/parse.hpp"

#include <random>

namespace rcf {

namespace {

Rat max_rat(const Rat &a, const Rat &b) { return a < b ? b : a; }

Rat ceil_int(const Rat &r) { return Rat(ceil_rat(r)); }

/* refine a and b until their intervals separate (a < b) */
void separate(RealAlg &a, RealAlg &b)
{
	while (!(a.hi() < b.lo())) {
		if (a.interval().width() >= b.interval().width())
			a = a.bisected();
		else
			b = b.bisected();
	}
}

/* The branches of p lying eventually strictly between c.lower and
 * c.upper, bottom to top, and the largest comparison bound used. */
std::pair<std::vector<Branch>, Rat> inside_branches(const EndCell &c, const IntPoly2 &p)
{
	BranchSet bs = branches_at_infinity(p);
	Rat B = max_rat(c.alpha, bs.bound);
	std::vector<Branch> in;
	for (const auto &b : bs.branches) {
		auto lo = compare_eventually(b, c.lower);
		B = max_rat(B, lo.bound);
		if (lo.ord <= 0)
			continue;
		auto hi = compare_eventually(b, c.upper);
		B = max_rat(B, hi.bound);
		if (hi.ord >= 0)
			break; /* branches are ordered, the rest are above too */
		in.push_back(b);
	}
	return {in, B};
}

int sign_in(const EndCell &c, const IntPoly2 &p)
{
	Rat x0 = c.alpha + 1;
	Rat y0 = rational_between(value_at(c.lower, x0), value_at(c.upper, x0));
	return sign_at(at_x(p, x0), y0);
}

} // namespace

std::string to_string(const EndCell &c)
{
	return "cell(" + to_string(c.alpha) + ", " + to_string(c.lower) + ", " + to_string(c.upper) +
	       ")";
}

EndCell parse_cell(std::string_view s)
{
	if (trim(s) == "default")
		return initial_cell();
	auto a = parse_call(s, "cell");
	if (a.size() != 3)
		throw ParseError("cell(...) takes three arguments");
	return EndCell{parse_rat(trim(a[0])), parse_branch(a[1]), parse_branch(a[2])};
}

EndCell initial_cell() { return EndCell{Rat(1), constant_branch(Rat(0)), constant_branch(Rat(1))}; }

bool is_valid_cell(const EndCell &c)
{
	if (c.alpha < c.lower.bound || c.alpha < c.upper.bound)
		return false;
	auto o = compare_eventually(c.lower, c.upper);
	return o.ord < 0 && o.bound <= c.alpha;
}

bool contains(const EndCell &c, const RealAlg &x, const RealAlg &y)
{
	if (compare(x, c.alpha) <= 0)
		return false;
	return compare(value_at(c.lower, x), y) < 0 && compare(y, value_at(c.upper, x)) < 0;
}

Rat rational_between(const RealAlg &a0, const RealAlg &b0)
{
	RealAlg a = a0, b = b0;
	separate(a, b);
	Rat s = simplest_between(a.hi(), b.lo());
	if ((s == a.hi() && a.is_rational()) || (s == b.lo() && b.is_rational()))
		s = (a.hi() + b.lo()) / 2;
	return s;
}

EndCell subcell(const EndCell &c, const Branch &lo, const Branch &hi)
{
	Rat B = max_rat(c.alpha, max_rat(lo.bound, hi.bound));
	B = max_rat(B, compare_eventually(lo, hi).bound);
	return EndCell{ceil_int(B), lo, hi};
}

Refinement refine_by_polynomial(const EndCell &c, const IntPoly2 &p)
{
	if (p.is_zero())
		return {c, 0};
	if (is_y_free(p)) {
		const IntPoly1 &px = p[0];
		EndCell d = bump_x_bound(c, Rat(root_magnitude_bound(px)));
		return {d, sgn(px.lc())};
	}
	auto [in, B] = inside_branches(c, p);
	EndCell d{ceil_int(B), c.lower, in.empty() ? c.upper : in.front()};
	return {d, sign_in(d, p)};
}

std::optional<Refinement> strip_containing(const EndCell &c, const IntPoly2 &p, const Branch &f)
{
	if (p.is_zero())
		return std::nullopt;
	if (is_y_free(p)) {
		const IntPoly1 &px = p[0];
		EndCell d = bump_x_bound(c, Rat(root_magnitude_bound(px)));
		return Refinement{d, sgn(px.lc())};
	}
	auto [in, B] = inside_branches(c, p);
	Branch lo = c.lower, hi = c.upper;
	for (const auto &b : in) {
		auto o = compare_eventually(b, f);
		B = max_rat(B, o.bound);
		if (o.ord == 0)
			return std::nullopt;
		if (o.ord < 0) {
			lo = b;
		} else {
			hi = b;
			break;
		}
	}
	B = max_rat(B, f.bound);
	EndCell d{ceil_int(B), lo, hi};
	return Refinement{d, sign_in(d, p)};
}

Branch midline(const EndCell &c, const Rat &r)
{
	if (sgn(r) == 0)
		return c.lower;
	if (r == 1)
		return c.upper;
	return branch_combine(BranchOp::mix, c.lower, c.upper, r);
}

Branch diagonal_curve(const EndCell &c, int k)
{
	/* psi = (d^k x^k - n^k) / (d^k x^k) for alpha = n/d */
	Int n = c.alpha.get_num(), d = c.alpha.get_den();
	IntPoly1 den = IntPoly1::monomial(int_pow(d, k), k);
	IntPoly1 num = den - IntPoly1::constant(int_pow(n, k));
	Branch psi = rational_branch(num, den);
	Branch zero = constant_branch(Rat(0));
	Branch width = c.lower == zero ? c.upper : branch_combine(BranchOp::sub, c.upper, c.lower);
	Branch f = branch_combine(BranchOp::mul, psi, width);
	if (!(c.lower == zero))
		f = branch_combine(BranchOp::add, c.lower, f);
	return f;
}

EndCell bump_x_bound(EndCell c, const Rat &n)
{
	if (c.alpha < n)
		c.alpha = ceil_int(n);
	return c;
}

std::pair<Rat, RealAlg> sample_point(const EndCell &c)
{
	Rat x0 = c.alpha + 1;
	RealAlg lo = value_at(c.lower, x0), hi = value_at(c.upper, x0);
	return {x0, (lo + hi) * RealAlg(Rat(1, 2))};
}

std::vector<std::pair<Rat, Rat>> interior_samples(const EndCell &c, int n, unsigned seed)
{
	std::mt19937 rng(seed);
	std::uniform_int_distribution<int> dx(1, 4000), dt(1, 999);
	std::vector<std::pair<Rat, Rat>> out;
	for (int k = 0; k < n; k++) {
		Rat x0 = c.alpha + Rat(dx(rng), 40);
		x0.canonicalize();
		RealAlg lo = value_at(c.lower, x0), hi = value_at(c.upper, x0);
		separate(lo, hi);
		Rat t(dt(rng), 1000);
		t.canonicalize();
		Rat y0 = lo.hi() + t * (hi.lo() - lo.hi());
		out.emplace_back(x0, y0);
	}
	return out;
}

} // namespace rcf
