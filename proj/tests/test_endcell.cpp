#include "rcf/endcell.hpp"
#include "rcf/parse.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rcf;

namespace {

Branch br(const char *q, int idx) { return branches_at_infinity(parse_poly2(q)).branches.at(idx); }

bool same_germ(const Branch &a, const Branch &b) { return compare_eventually(a, b).ord == 0; }

bool nested(const EndCell &inner, const EndCell &outer)
{
	return inner.alpha >= outer.alpha && compare_eventually(outer.lower, inner.lower).ord <= 0 &&
	       compare_eventually(inner.upper, outer.upper).ord <= 0;
}

EndCell sqrt_cell() { return EndCell{Rat(4), br("z^2 - x", 1), br("z - x", 0)}; }

IntPoly2 random_poly2(std::mt19937 &rng, int maxdeg, long maxc)
{
	std::uniform_int_distribution<long> coef(-maxc, maxc);
	std::uniform_int_distribution<int> deg(1, maxdeg);
	int d = deg(rng);
	IntPoly2 p;
	for (int j = 0; j <= d; j++)
		for (int i = 0; i + j <= d; i++) {
			long c = coef(rng);
			if (c != 0)
				p += IntPoly2::monomial(IntPoly1::monomial(Int(c), i), j);
		}
	return p;
}

} // namespace

TEST_CASE("initial cell")
{
	EndCell c = initial_cell();
	CHECK(c.alpha == 1);
	CHECK(is_valid_cell(c));
	CHECK(contains(c, RealAlg(2), RealAlg(Rat(1, 2))));
	CHECK_FALSE(contains(c, RealAlg(2), RealAlg(3)));
	CHECK_FALSE(contains(c, RealAlg(1), RealAlg(Rat(1, 2))));
	CHECK(parse_cell(to_string(c)) == c);
	CHECK(parse_cell("default") == c);
}

TEST_CASE("refine_by_polynomial examples")
{
	EndCell c = initial_cell();
	Refinement r = refine_by_polynomial(c, parse_poly2("2*y - 1"));
	CHECK(r.sign == -1);
	CHECK(same_germ(r.cell.lower, constant_branch(Rat(0))));
	CHECK(same_germ(r.cell.upper, constant_branch(Rat(1, 2))));
	/* oracle: 2y - 1 at the sample (alpha + 1, 1/4) */
	auto s = sample_point(r.cell);
	CHECK(sign_at2(parse_poly2("2*y - 1"), RealAlg(s.first), s.second) == -1);

	Refinement rx = refine_by_polynomial(c, parse_poly2("x"));
	CHECK(rx.sign == 1);
	CHECK(rx.cell == c);

	Refinement rq = refine_by_polynomial(c, parse_poly2("y^2 - x"));
	CHECK(rq.sign == -1);
	CHECK(same_germ(rq.cell.upper, c.upper));

	CHECK(refine_by_polynomial(c, IntPoly2()).sign == 0);
	CHECK(refine_by_polynomial(c, parse_poly2("y")).sign == 1);
	CHECK(refine_by_polynomial(c, parse_poly2("x - 7")).cell.alpha >= 7);
}

TEST_CASE("midline and diagonal examples")
{
	EndCell c = initial_cell();
	CHECK(same_germ(midline(c, Rat(1, 2)), constant_branch(Rat(1, 2))));
	CHECK(midline(c, Rat(0)) == c.lower);
	CHECK(value_at(midline(sqrt_cell(), Rat(1, 2)), Rat(9)) == RealAlg(6));

	CHECK(same_germ(diagonal_curve(c, 1), br("x*z - x + 1", 0)));
	CHECK(same_germ(diagonal_curve(c, 2), br("x^2*z - x^2 + 1", 0)));
	EndCell wide{Rat(1), constant_branch(Rat(0)), br("z - x", 0)};
	Branch d = diagonal_curve(wide, 1);
	CHECK(value_at(d, Rat(10)) == RealAlg(9));
	Branch e = diagonal_curve(sqrt_cell(), 1);
	CHECK(compare_eventually(sqrt_cell().lower, e).ord < 0);
	CHECK(compare_eventually(e, sqrt_cell().upper).ord < 0);
	/* oracle: sqrt 8 + (1 - 1/2)(8 - sqrt 8) = 4 + sqrt 2 */
	CHECK(value_at(e, Rat(8)).to_double() == doctest::Approx(4 + std::sqrt(2.0)));
}

TEST_CASE("bump and sample examples")
{
	EndCell c = initial_cell();
	CHECK(bump_x_bound(c, Rat(5)).alpha == 5);
	CHECK(bump_x_bound(c, Rat(0)) == c);
	CHECK(bump_x_bound(c, c.alpha) == c);

	auto s = sample_point(c);
	CHECK(s.first == 2);
	CHECK(s.second == RealAlg(Rat(1, 2)));
	auto t = sample_point(sqrt_cell());
	CHECK(t.first == 5);
	CHECK(t.second.to_double() == doctest::Approx((std::sqrt(5.0) + 5) / 2));
	auto u = sample_point(bump_x_bound(c, Rat(5)));
	CHECK(u.first == 6);
	CHECK(u.second == RealAlg(Rat(1, 2)));
}

TEST_CASE("strip_containing")
{
	EndCell c = initial_cell();
	Branch f = constant_branch(Rat(3, 4));
	auto r = strip_containing(c, parse_poly2("(2*y - 1)*(4*y - 1)"), f);
	REQUIRE(r);
	CHECK(same_germ(r->cell.lower, constant_branch(Rat(1, 2))));
	CHECK(same_germ(r->cell.upper, c.upper));
	CHECK(r->sign == 1);
	CHECK_FALSE(strip_containing(c, parse_poly2("4*y - 3"), f));
}

TEST_CASE("random refinements are sound and nested")
{
	std::mt19937 rng(23);
	EndCell c = initial_cell();
	for (int t = 0; t < 25; t++) {
		IntPoly2 p = random_poly2(rng, 3, 9);
		if (p.is_zero())
			continue;
		Refinement r = refine_by_polynomial(c, p);
		CHECK(r.sign != 0);
		CHECK(is_valid_cell(r.cell));
		CHECK(nested(r.cell, c));
		for (auto [x0, y0] : interior_samples(r.cell, 10, t))
			CHECK(sign_at(at_x(p, x0), y0) == r.sign);
	}
}
