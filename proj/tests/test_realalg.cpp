#include "rcf/realalg.hpp"

#include <doctest.h>

#include <random>

using namespace rcf;

namespace {

IntPoly1 P(std::vector<long> c)
{
	std::vector<Int> v;
	for (long a : c)
		v.push_back(Int(a));
	return IntPoly1(std::move(v));
}

RealAlg sqrt_of(long n)
{
	auto r = RealAlg::roots(P({-n, 0, 1}));
	return r.back();
}

Rat R(long n, long d = 1)
{
	Rat q(n, d);
	q.canonicalize();
	return q;
}

} // namespace

TEST_CASE("isolate_real_roots examples")
{
	auto r = isolate_real_roots(P({-2, 0, 1}));
	REQUIRE(r.size() == 2);
	CHECK(r[0].lo >= -2);
	CHECK(r[0].hi <= -1);
	CHECK(r[1].lo >= 1);
	CHECK(r[1].hi <= 2);

	CHECK(isolate_real_roots(P({1, 0, 1})).empty());

	/* oracle: (x - 1)^2 (x + 3) expands to x^3 + x^2 - 5x + 3 */
	IntPoly1 f = P({-1, 1}) * P({-1, 1}) * P({3, 1});
	CHECK(f == P({3, -5, 1, 1}));
	auto s = isolate_real_roots(f);
	REQUIRE(s.size() == 2);
	CHECK(s[0].contains(Rat(-3)));
	CHECK(s[1].contains(Rat(1)));

	CHECK_THROWS_WITH_AS(isolate_real_roots(IntPoly1()), "zero polynomial has no isolated roots",
	                     DomainError);
}

TEST_CASE("isolating intervals have Sturm count one")
{
	std::mt19937 rng(7);
	std::uniform_int_distribution<long> coef(-20, 20);
	for (int t = 0; t < 60; t++) {
		std::vector<long> c(1 + t % 7);
		for (auto &a : c)
			a = coef(rng);
		c.back() = c.back() == 0 ? 1 : c.back();
		IntPoly1 p = P(c);
		IntPoly1 q = squarefree_part(p);
		auto ch = sturm_chain(q);
		auto iv = isolate_real_roots(p);
		CHECK(static_cast<int>(iv.size()) == (q.degree() <= 0 ? 0 : sturm_count_all(ch)));
		for (size_t i = 0; i < iv.size(); i++) {
			const auto &I = iv[i];
			if (I.lo == I.hi)
				CHECK(sign_at(q, I.lo) == 0);
			else
				CHECK(sturm_count(ch, I.lo, I.hi) == 1);
			if (i + 1 < iv.size())
				CHECK(I.hi < iv[i + 1].lo);
		}
	}
}

TEST_CASE("sturm_count examples")
{
	CHECK(sturm_count(sturm_chain(P({-2, 0, 1})), Rat(0), Rat(2)) == 1);
	CHECK(sturm_count(sturm_chain(P({-2, 0, 1})), Rat(-2), Rat(2)) == 2);
	/* x^3 - 3x + 1: numeric roots -1.879, 0.347, 1.532 */
	CHECK(sturm_count(sturm_chain(P({1, -3, 0, 1})), Rat(-2), Rat(2)) == 3);
}

TEST_CASE("sign_at examples")
{
	RealAlg s2 = sqrt_of(2);
	CHECK(sign_at(P({-2, 0, 1}), s2) == 0);
	CHECK(sign_at(P({-1, 1}), s2) == 1);

	RealAlg t = s2 + sqrt_of(3);
	IntPoly1 f = P({1, 0, -10, 0, 1});
	CHECK(sign_at(f, t) == 0);
	/* oracle: at width 1e-30 the interval value of f contains zero */
	Rat w(Int(1), Int("1000000000000000000000000000000"));
	RealAlg tr = t.refined(w);
	CHECK(tr.interval().width() <= w);
	CHECK(eval(f, tr.interval()).contains_zero());
	CHECK(tr.to_double() == doctest::Approx(1.4142135623730951 + 1.7320508075688772));
}

TEST_CASE("alg_arith examples")
{
	RealAlg s2 = sqrt_of(2), s3 = sqrt_of(3);
	CHECK(alg_arith(AlgOp::add, s2, -s2).sign() == 0);
	CHECK((s2 + (-s2)).is_rational());

	RealAlg p = alg_arith(AlgOp::mul, s2, s3);
	CHECK(p.defining() == P({-6, 0, 1}));
	CHECK(p.to_double() == doctest::Approx(2.449489742783178));

	RealAlg h = alg_arith(AlgOp::inv, RealAlg(2));
	REQUIRE(h.is_rational());
	CHECK(h.rational() == R(1, 2));

	CHECK_THROWS_WITH_AS(alg_arith(AlgOp::div, s2, RealAlg(0)), "division by zero in k",
	                     DomainError);
	CHECK_THROWS_AS(alg_arith(AlgOp::inv, s2 - s2), DomainError);

	RealAlg sq = s2 * s2;
	REQUIRE(sq.is_rational());
	CHECK(sq.rational() == 2);
	CHECK((s2 / s2) == RealAlg(1));
}

TEST_CASE("compare examples")
{
	RealAlg s2 = sqrt_of(2);
	CHECK(compare(s2, RealAlg(R(3, 2))) < 0);
	RealAlg other = RealAlg::from_root(P({-2, 0, 1}), Interval(R(14, 10), R(15, 10)));
	CHECK(!same_representation(s2, other));
	CHECK(compare(s2, other) == 0);
	RealAlg t = s2 + sqrt_of(3);
	CHECK(compare(t, RealAlg(R(157, 50))) > 0);
	/* oracle: float value 3.14626... vs 3.14 */
	CHECK(1.4142135623730951 + 1.7320508075688772 > 3.14);
}

TEST_CASE("refinement never changes a comparison")
{
	RealAlg a = sqrt_of(2), b = sqrt_of(3) - RealAlg(R(1, 3));
	auto base = compare(a, b);
	for (int k = 1; k < 30; k += 7) {
		Rat w(Int(1), Int(1) << k);
		CHECK(compare(a.refined(w), b) == base);
		CHECK(compare(a, b.refined(w)) == base);
	}
}

TEST_CASE("from_root validation")
{
	CHECK_THROWS_AS(RealAlg::from_root(P({-2, 0, 1}), Interval(Rat(-2), Rat(2))), DomainError);
	CHECK_THROWS_AS(RealAlg::from_root(IntPoly1(), Interval(Rat(0), Rat(1))), DomainError);
	RealAlg r = RealAlg::from_root(P({-1, 1}), Interval(Rat(0), Rat(1)));
	CHECK(r.is_rational());
	CHECK(r.rational() == 1);
}

TEST_CASE("eval_rational_function")
{
	RealAlg s2 = sqrt_of(2);
	/* (x^2 + 1) / x at sqrt 2 = 3 / sqrt 2 = 3 sqrt 2 / 2 */
	RealAlg v = eval_rational_function(P({1, 0, 2}), P({0, 1}), s2);
	CHECK(compare(v, s2 * RealAlg(R(5, 2))) == 0);
	CHECK_THROWS_AS(eval_rational_function(P({1}), P({-2, 0, 1}), s2), DomainError);
}

TEST_CASE("refine_root keeps the root and reaches the width")
{
	std::mt19937 rng(17);
	std::uniform_int_distribution<long> c(-30, 30), d(2, 6);
	Rat w(Int(1), Int(1) << 200);
	for (int k = 0; k < 60; k++) {
		std::vector<long> v(d(rng) + 1);
		for (auto &a : v)
			a = c(rng);
		if (v.back() == 0)
			v.back() = 1;
		IntPoly1 p = sqfree(P(v));
		if (p.degree() < 1)
			continue;
		for (const auto &I : isolate_real_roots(p)) {
			if (I.lo == I.hi)
				continue;
			Interval J = refine_root(p, I, w);
			CHECK(I.lo <= J.lo);
			CHECK(J.hi <= I.hi);
			if (J.lo == J.hi) {
				CHECK(sign_at(p, J.lo) == 0);
				continue;
			}
			CHECK(J.width() <= w);
			CHECK(sign_at(p, J.lo) * sign_at(p, J.hi) < 0);
		}
	}
	/* a rational root with a large leading coefficient is still detected */
	Int big = Int(1) << 3000;
	IntPoly1 q = IntPoly1(std::vector<Int>{Int(-1), Int(0), big}) * P({-1, 2});
	auto rs = RealAlg::roots(q);
	REQUIRE(rs.size() == 3);
	CHECK(rs[2].is_rational());
	CHECK(rs[2].rational() == R(1, 2));
}
