#include "rcf/maplemma.hpp"
#include "rcf/parse.hpp"

#include <doctest.h>

using namespace rcf;

namespace {

RationalMap2 M(const char *s) { return parse_map(s); }

Rat val(const IntPoly2 &p, const Rat &x, const Rat &y)
{
	RationalMap2 F{p, constant2(Int(1)), constant2(Int(0)), constant2(Int(1))};
	return apply_map(F, x, y)->first;
}

bool nested(const EndCell &inner, const EndCell &outer)
{
	return inner.alpha >= outer.alpha && compare_eventually(outer.lower, inner.lower).ord <= 0 &&
	       compare_eventually(inner.upper, outer.upper).ord <= 0;
}

} // namespace

TEST_CASE("map parsing normalizes and round-trips")
{
	RationalMap2 F = M("map(2x, 2, y*x, x)");
	CHECK(is_identity_map(F));
	RationalMap2 G = M("map(x + 1, 1, y/2, 1)");
	CHECK(G.q2 == constant2(Int(2)));
	CHECK(parse_map(to_string(G)) == G);
	CHECK_THROWS_AS(M("map(x, 0, y, 1)"), ParseError);
	auto v = apply_map(M("map(x, y, 1, x - 2)"), Rat(2), Rat(3));
	CHECK(!v);
	v = apply_map(M("map(x, y, 1, x - 2)"), Rat(3), Rat(4));
	CHECK(v->first == Rat(3, 4));
	CHECK(v->second == Rat(1));
}

TEST_CASE("identity test")
{
	CHECK(is_identity_map(M("map(x, 1, y, 1)")));
	CHECK(!is_identity_map(M("map(x + 1, 1, y, 1)")));
}

TEST_CASE("image of a degenerate map")
{
	CHECK(!image_dimension_deficient(M("map(x, 1, y, 1)")));
	auto G = image_dimension_deficient(M("map(x, 1, 1, x)"));
	REQUIRE(G);
	for (int t = 1; t <= 5; t++)
		CHECK(val(*G, Rat(t), Rat(1, t)) == 0);
	CHECK(val(*G, Rat(2), Rat(1)) != 0);
	CHECK(total_degree(*G) == 2);

	G = image_dimension_deficient(M("map(x^2, 1, x^4, 1)"));
	REQUIRE(G);
	for (int t = -2; t <= 2; t++)
		CHECK(val(*G, Rat(t * t), Rat(t * t * t * t)) == 0);
	CHECK(deg_y(*G) == 1);
	CHECK(deg_x(*G) == 2);

	G = image_dimension_deficient(M("map(3, 1, 5, 2)"));
	REQUIRE(G);
	CHECK(val(*G, Rat(3), Rat(7)) == 0);

	G = image_dimension_deficient(M("map(y + 1, 1, y^2, y - 3)"));
	REQUIRE(G);
	for (int t = 4; t <= 8; t++)
		CHECK(val(*G, Rat(t + 1), Rat(t * t, t - 3)) == 0);
}

TEST_CASE("avoid_curve")
{
	EndCell c = initial_cell();
	EndCell d = avoid_curve(c, parse_poly2("2y - 1"));
	CHECK(d.upper == constant_branch(Rat(1, 2)));
	CHECK(d.lower == c.lower);
	CHECK(avoid_curve(c, parse_poly2("x")) == c);
	CHECK(avoid_curve(c, parse_poly2("y^2 - y + 5")) == c);
	CHECK_THROWS_AS(avoid_curve(c, IntPoly2()), DomainError);
}

TEST_CASE("pullback clears denominators")
{
	RationalMap2 F = M("map(x, y, 1, x + 1)");
	IntPoly2 D = parse_poly2("x^2 - 3y + 1");
	IntPoly2 P = pullback(D, F);
	for (int i = 2; i < 6; i++) {
		Rat x(i), y(i + 3);
		Rat X = x / y, Y = Rat(1) / (x + 1);
		Rat expect = (X * X - 3 * Y + 1) * y * y * (x + 1);
		CHECK(val(P, x, y) == expect);
	}
}

TEST_CASE("mu_nu and pushforward")
{
	EndCell c = initial_cell();
	Branch half = constant_branch(Rat(1, 2));
	auto [mu, nu] = mu_nu(c, half, M("map(x + 1, 1, y, 1)"));
	CHECK(value_at(mu, Rat(10)) == RealAlg(Rat(11)));
	CHECK(value_at(nu, Rat(10)) == RealAlg(Rat(1, 2)));
	CHECK(compare_eventually(pushforward_curve(half, mu, nu), half).ord == 0);

	std::tie(mu, nu) = mu_nu(c, half, M("map(x, 1, x y + 1, x)"));
	CHECK(value_at(mu, Rat(10)) == RealAlg(Rat(10)));
	CHECK(value_at(nu, Rat(10)) == RealAlg(Rat(6, 10)));

	Branch f = rational_branch(parse_poly1("x - 1"), parse_poly1("x"));
	std::tie(mu, nu) = mu_nu(c, f, M("map(y, 1, x, 1)"));
	CHECK(value_at(mu, Rat(10)) == RealAlg(Rat(9, 10)));
	CHECK(value_at(nu, Rat(10)) == RealAlg(Rat(10)));
	CHECK_THROWS_AS(pushforward_curve(f, mu, nu), DomainError);

	std::tie(mu, nu) = mu_nu(c, f, M("map(x + 1, 1, y, 1)"));
	Branch fs = pushforward_curve(f, mu, nu);
	CHECK(value_at(fs, Rat(11)) == RealAlg(Rat(9, 10)));

	/* q1 vanishes along f */
	CHECK_THROWS_AS(mu_nu(c, half, M("map(1, 2y - 1, y, 1)")), DomainError);
}

TEST_CASE("case 3 escape")
{
	EndCell c = initial_cell();
	Branch half = constant_branch(Rat(1, 2));
	RationalMap2 F = M("map(y, 1, x, 1)");
	auto v = case3_escape(c, half, F);
	REQUIRE(v);
	CHECK(v->tag == CaseTag::case3_escape);
	CHECK(check_verdict(*v, F, 10, 1));
	CHECK(nested(v->cell, c));

	F = M("map(1, x, y, 1)");
	v = case3_escape(c, half, F);
	REQUIRE(v);
	CHECK(check_verdict(*v, F, 10, 2));

	CHECK(!case3_escape(c, half, M("map(x + 1, 1, y, 1)")));
}

TEST_CASE("case 4 tube")
{
	EndCell c = initial_cell();
	Branch half = constant_branch(Rat(1, 2));
	RationalMap2 F = M("map(x, 1, x y + 1, x)");
	auto [mu, nu] = mu_nu(c, half, F);
	Branch fs = pushforward_curve(half, mu, nu);
	auto v = case4_tube(c, half, fs, F, mu, nu);
	REQUIRE(v);
	CHECK(check_verdict(*v, F, 10, 3));
	/* the cell at x = 100 lies within 1/(4x) of 1/2, the image above 1/2 + 1/(2x) */
	if (v->cell.alpha < 100) {
		RealAlg lo = value_at(v->cell.lower, Rat(100)), hi = value_at(v->cell.upper, Rat(100));
		CHECK(compare(hi, Rat(1, 2) + Rat(1, 400)) <= 0);
		CHECK(compare(lo, Rat(1, 2) - Rat(1, 400)) >= 0);
		CHECK(compare(value_at(*v->phi0, Rat(100)), Rat(1, 2) + Rat(1, 200)) == 0);
	}

	F = M("map(x + 1, 1, y, 1)");
	Branch f = diagonal_curve(c, 1);
	std::tie(mu, nu) = mu_nu(c, f, F);
	fs = pushforward_curve(f, mu, nu);
	CHECK(compare_eventually(fs, f).ord < 0);
	v = case4_tube(c, f, fs, F, mu, nu);
	REQUIRE(v);
	CHECK(check_verdict(*v, F, 10, 4));

	std::tie(mu, nu) = mu_nu(c, half, F);
	CHECK(!case4_tube(c, half, half, F, mu, nu));
}

TEST_CASE("classify suite")
{
	EndCell c = initial_cell();
	struct Row {
		const char *map;
		CaseTag tag;
		const char *curve; /* empty: not checked */
	};
	const Row rows[] = {
		{"map(x, 1, y, 1)", CaseTag::case2_identity, ""},
		{"map(x + 1, 1, y, 1)", CaseTag::case4_tube, "diagonal 1"},
		{"map(y, 1, x, 1)", CaseTag::case3_escape, "midline 1/2"},
		{"map(x, 1, 1, x)", CaseTag::case1_lowdim, ""},
		{"map(x, 1, x y + 1, x)", CaseTag::case4_tube, "midline 1/2"},
		{"map(2x, 1, y, 1)", CaseTag::case4_tube, "diagonal 1"},
		{"map(x^2, 1, y, 1)", CaseTag::case4_tube, "diagonal 1"},
		{"map(x, 1, y, 2)", CaseTag::case4_tube, "midline 1/2"},
	};
	unsigned seed = 10;
	for (const auto &r : rows) {
		CAPTURE(r.map);
		RationalMap2 F = M(r.map);
		LemmaVerdict v = classify(c, F);
		CHECK(to_string(v.tag) == to_string(r.tag));
		if (*r.curve)
			CHECK(v.curve == r.curve);
		CHECK(nested(v.cell, c));
		CHECK(check_verdict(v, F, 10, seed++));
	}
}

TEST_CASE("classify on a curved cell")
{
	EndCell c{Rat(4), branches_at_infinity(parse_poly2("y^2 - x")).branches.at(1),
	          branches_at_infinity(parse_poly2("y - x")).branches.at(0)};
	for (const char *m : {"map(x + 1, 1, y, 1)", "map(y, 1, x, 1)", "map(x, 1, y + 1, 1)",
	                      "map(x, 1, 2y, 1)"}) {
		CAPTURE(m);
		RationalMap2 F = M(m);
		LemmaVerdict v = classify(c, F);
		CHECK(v.kind == VerdictKind::disjoint);
		CHECK(nested(v.cell, c));
		CHECK(check_verdict(v, F, 10, 99));
	}
}
