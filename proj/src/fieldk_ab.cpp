#include "rcf/fieldk_ab.hpp"
#include "rcf/parse.hpp"

#include <functional>
#include <random>

namespace rcf {

namespace {

KElement kconst(const Rat &q) { return KElement(constant2(q.get_num()), constant2(q.get_den())); }

void kp_trim(KPoly &p)
{
	while (!p.empty() && p.back().is_zero())
		p.pop_back();
}

int kp_deg(const KPoly &p) { return static_cast<int>(p.size()) - 1; }

KPoly kp_derivative(const KPoly &p)
{
	KPoly d;
	for (size_t i = 1; i < p.size(); i++)
		d.push_back(p[i] * kconst(Rat(static_cast<long>(i))));
	kp_trim(d);
	return d;
}

KPoly kp_rem(KPoly a, const KPoly &b)
{
	int db = kp_deg(b);
	while (kp_deg(a) >= db) {
		KElement q = a.back() / b.back();
		int shift = kp_deg(a) - db;
		for (int i = 0; i <= db; i++)
			a[i + shift] = a[i + shift] - q * b[i];
		a.pop_back();
		kp_trim(a);
	}
	return a;
}

KPoly kp_monic(KPoly p)
{
	KElement l = p.back();
	for (auto &c : p)
		c = c / l;
	return p;
}

KPoly kp_gcd(KPoly a, KPoly b)
{
	while (!b.empty()) {
		KPoly r = kp_rem(a, b);
		a = std::move(b);
		b = std::move(r);
	}
	return a.empty() ? a : kp_monic(a);
}

KElement kp_eval(const KPoly &p, const KElement &e)
{
	KElement acc;
	for (size_t i = p.size(); i-- > 0;)
		acc = acc * e + p[i];
	return acc;
}

std::vector<KPoly> sturm_chain(const KPoly &p)
{
	std::vector<KPoly> c{p, kp_derivative(p)};
	while (!c.back().empty()) {
		KPoly r = kp_rem(c[c.size() - 2], c.back());
		for (auto &v : r)
			v = -v;
		if (r.empty())
			break;
		c.push_back(std::move(r));
	}
	if (c.back().empty())
		c.pop_back();
	return c;
}

int variations(const std::vector<int> &s)
{
	int v = 0, last = 0;
	for (int x : s) {
		if (x == 0)
			continue;
		if (last != 0 && x != last)
			v++;
		last = x;
	}
	return v;
}

/* sign changes at +inf (dir 1) or -inf (dir -1) */
std::pair<int, Tower> variations_at_infinity(const Tower &t, const std::vector<KPoly> &chain, int dir)
{
	Tower cur = t;
	std::vector<int> s;
	for (const auto &q : chain) {
		auto [sg, nt] = k_sign(cur, q.back());
		cur = std::move(nt);
		s.push_back(dir < 0 && kp_deg(q) % 2 == 1 ? -sg : sg);
	}
	return {variations(s), cur};
}

std::pair<int, Tower> variations_at(const Tower &t, const std::vector<KPoly> &chain, const KElement &e)
{
	Tower cur = t;
	std::vector<int> s;
	for (const auto &q : chain) {
		auto [sg, nt] = k_sign(cur, kp_eval(q, e));
		cur = std::move(nt);
		s.push_back(sg);
	}
	return {variations(s), cur};
}

KPoly checked(KPoly p)
{
	kp_trim(p);
	if (p.empty())
		throw DomainError("zero polynomial over K");
	return p;
}

/* number of roots <= e */
std::pair<int, Tower> roots_up_to(const Tower &t, const std::vector<KPoly> &chain, const KElement &e)
{
	auto [vm, t1] = variations_at_infinity(t, chain, -1);
	auto [ve, t2] = variations_at(t1, chain, e);
	return {vm - ve, t2};
}

struct Isolation {
	KElement lo, hi; /* exactly the wanted root in (lo, hi] */
};

std::pair<Isolation, Tower> isolate(const Tower &t, const RootElement &r, int max_steps)
{
	Tower cur = t;
	auto chain = sturm_chain(r.poly);
	KElement B = kconst(Rat(1));
	const KElement &lc = r.poly.back();
	for (size_t i = 0; i + 1 < r.poly.size(); i++) {
		KElement q = r.poly[i] / lc;
		auto [sg, nt] = k_sign(cur, q);
		cur = std::move(nt);
		B = B + (sg < 0 ? -q : q);
	}
	Isolation I{-B, B};
	for (int step = 0;; step++) {
		auto [nlo, t1] = roots_up_to(cur, chain, I.lo);
		auto [nhi, t2] = roots_up_to(t1, chain, I.hi);
		cur = std::move(t2);
		if (nhi - nlo == 1)
			return {I, cur};
		if (step >= max_steps)
			throw ResourceError("root isolation over K did not converge");
		KElement mid = (I.lo + I.hi) * kconst(Rat(1, 2));
		auto [nmid, t3] = roots_up_to(cur, chain, mid);
		cur = std::move(t3);
		if (nmid > r.index)
			I.hi = mid;
		else
			I.lo = mid;
	}
}

void halve(Tower &cur, const std::vector<KPoly> &chain, const RootElement &r, Isolation &I)
{
	KElement mid = (I.lo + I.hi) * kconst(Rat(1, 2));
	auto [nmid, t] = roots_up_to(cur, chain, mid);
	cur = std::move(t);
	if (nmid > r.index)
		I.hi = mid;
	else
		I.lo = mid;
}

std::string kelement_string(const KElement &e)
{
	if (e.is_polynomial()) {
		const Int &d = e.den.lc().lc();
		if (d == 1)
			return to_string(e.num);
		return "(" + to_string(e.num) + ")/" + to_string(d);
	}
	return to_string(e);
}

} // namespace

KElement parse_kelement(std::string_view s) { return parse_ratfunc(s); }

KElement k_arith(KOp op, const KElement &u, const KElement &v)
{
	switch (op) {
	case KOp::add: return u + v;
	case KOp::sub: return u - v;
	case KOp::mul: return u * v;
	case KOp::div: return u / v;
	}
	return u;
}

std::pair<int, Tower> k_sign(const Tower &t, const KElement &u)
{
	if (u.is_zero())
		return {0, t};
	auto [sn, t1] = sign_of(t, u.num);
	auto [sd, t2] = sign_of(t1, u.den);
	return {sn * sd, t2};
}

std::pair<std::strong_ordering, Tower> k_compare(const Tower &t, const KElement &u, const KElement &v)
{
	auto [s, t1] = k_sign(t, u - v);
	return {to_ordering(s), t1};
}

KPoly parse_kpoly(std::string_view s) { return parse_zpoly(s); }

std::string to_string(const KPoly &p)
{
	if (p.empty())
		return "0";
	std::string out;
	for (size_t i = p.size(); i-- > 0;) {
		if (p[i].is_zero())
			continue;
		std::string c = "(" + kelement_string(p[i]) + ")";
		std::string m = i == 0 ? "" : i == 1 ? "z" : "z^" + std::to_string(i);
		std::string term = m.empty() ? c : c == "(1)" ? m : c + "*" + m;
		out += out.empty() ? term : " + " + term;
	}
	return out;
}

std::pair<int, Tower> count_real_roots_over_K(const Tower &t, const KPoly &p0)
{
	KPoly p = checked(p0);
	if (kp_deg(p) == 0)
		return {0, t};
	auto chain = sturm_chain(p);
	auto [vm, t1] = variations_at_infinity(t, chain, -1);
	auto [vp, t2] = variations_at_infinity(t1, chain, 1);
	return {vm - vp, t2};
}

std::pair<int, Tower> count_roots_between(const Tower &t, const KPoly &p0, const KElement &lo,
                                          const KElement &hi)
{
	KPoly p = checked(p0);
	if (kp_deg(p) == 0)
		return {0, t};
	auto chain = sturm_chain(p);
	auto [vl, t1] = variations_at(t, chain, lo);
	auto [vh, t2] = variations_at(t1, chain, hi);
	return {vl - vh, t2};
}

RootElement parse_root(std::string_view s)
{
	auto a = parse_call(s, "root");
	if (a.size() != 2)
		throw ParseError("root(...) takes two arguments");
	long idx = parse_long(a[1]);
	if (idx < 0)
		throw ParseError("root index must be nonnegative");
	KPoly p = parse_kpoly(a[0]);
	if (p.empty())
		throw ParseError("root of the zero polynomial");
	return RootElement{p, static_cast<int>(idx)};
}

std::string to_string(const RootElement &r)
{
	return "root(" + to_string(r.poly) + ", " + std::to_string(r.index) + ")";
}

std::pair<RootElement, Tower> root_element(const Tower &t, const KPoly &poly, int index)
{
	KPoly p = checked(poly);
	auto [n, t1] = count_real_roots_over_K(t, p);
	if (index < 0 || index >= n)
		throw DomainError("root index " + std::to_string(index) + " out of range (" +
		                  std::to_string(n) + " real roots)");
	return {RootElement{p, index}, t1};
}

std::pair<std::strong_ordering, Tower> compare_root(const Tower &t, const RootElement &r,
                                                    const KElement &u)
{
	KPoly p = checked(r.poly);
	auto chain = sturm_chain(p);
	auto [n, t1] = roots_up_to(t, chain, u);
	bool zero = kp_eval(p, u).is_zero();
	int below = n - (zero ? 1 : 0);
	if (r.index < below)
		return {std::strong_ordering::less, t1};
	if (zero && r.index == below)
		return {std::strong_ordering::equal, t1};
	return {std::strong_ordering::greater, t1};
}

std::pair<std::strong_ordering, Tower> compare_roots(const Tower &t, const RootElement &r1,
                                                     const RootElement &r2, int max_steps)
{
	RootElement a{checked(r1.poly), r1.index}, b{checked(r2.poly), r2.index};
	auto [I1, t1] = isolate(t, a, max_steps);
	auto [I2, t2] = isolate(t1, b, max_steps);
	Tower cur = std::move(t2);
	auto c1 = sturm_chain(a.poly), c2 = sturm_chain(b.poly);
	KPoly g = kp_gcd(a.poly, b.poly);
	for (int step = 0; step <= max_steps; step++) {
		auto [o1, ta] = k_compare(cur, I1.hi, I2.lo);
		cur = std::move(ta);
		if (o1 <= 0)
			return {std::strong_ordering::less, cur};
		auto [o2, tb] = k_compare(cur, I2.hi, I1.lo);
		cur = std::move(tb);
		if (o2 <= 0)
			return {std::strong_ordering::greater, cur};
		if (kp_deg(g) >= 1) {
			/* a common root in the overlap is both r1 and r2 */
			auto [ol, tc] = k_compare(cur, I1.lo, I2.lo);
			auto [oh, td] = k_compare(tc, I1.hi, I2.hi);
			cur = std::move(td);
			KElement lo = ol > 0 ? I1.lo : I2.lo, hi = oh < 0 ? I1.hi : I2.hi;
			auto [n, te] = count_roots_between(cur, g, lo, hi);
			cur = std::move(te);
			if (n >= 1)
				return {std::strong_ordering::equal, cur};
		}
		halve(cur, c1, a, I1);
		halve(cur, c2, b, I2);
	}
	throw ResourceError("root comparison over K did not separate within " +
	                    std::to_string(max_steps) + " halvings");
}

Prop21Report prop21_check(int m, int height_cap, unsigned seed)
{
	if (m < 2)
		throw DomainError("prop21_check needs m >= 2");
	Prop21Report rep;
	rep.m = m;
	rep.height_cap = height_cap;
	Tower t = initial_tower(TowerMode::session);
	IntPoly1 xm = IntPoly1::monomial(Int(1), m);

	auto same_sign = [&](const IntPoly1 &p) {
		auto [s1, t1] = k_sign(t, KElement(from_x(p)));
		auto [s2, t2] = k_sign(t1, KElement(from_x(compose(p, xm))));
		t = std::move(t2);
		int lead = sgn(p.lc());
		if (s1 != lead || s2 != lead)
			rep.counterexamples.push_back("p = " + to_string(p) + ": sign " + std::to_string(s1) +
			                              " vs " + std::to_string(s2));
		rep.polynomials++;
	};

	/* every integer polynomial of height deg + sum |c| <= height_cap */
	for (int d = 0; d < height_cap; d++) {
		std::vector<long> c(d + 1, 0);
		long budget = height_cap - d;
		std::function<void(int, long)> rec = [&](int k, long left) {
			if (k < 0) {
				if (c[d] == 0)
					return;
				std::vector<Int> v(c.begin(), c.end());
				same_sign(IntPoly1(v));
				return;
			}
			for (long a = -left; a <= left; a++) {
				c[k] = a;
				rec(k - 1, left - std::labs(a));
			}
			c[k] = 0;
		};
		rec(d, budget);
	}

	std::mt19937 rng(seed);
	std::uniform_int_distribution<int> deg(0, 3), coef(-5, 5);
	auto random_poly = [&] {
		std::vector<Int> v;
		int d = deg(rng);
		for (int i = 0; i <= d; i++)
			v.push_back(Int(coef(rng)));
		return IntPoly1(v);
	};
	auto at_power = [&](const KElement &r) {
		return KElement(from_x(compose(as_x_poly(r.num), xm)), from_x(compose(as_x_poly(r.den), xm)));
	};
	while (rep.pairs < 50) {
		IntPoly1 n1 = random_poly(), d1 = random_poly(), n2 = random_poly(), d2 = random_poly();
		if (d1.is_zero() || d2.is_zero())
			continue;
		KElement r1(from_x(n1), from_x(d1)), r2(from_x(n2), from_x(d2));
		if (r1 == r2)
			continue;
		auto [o1, t1] = k_compare(t, r1, r2);
		auto [o2, t2] = k_compare(t1, at_power(r1), at_power(r2));
		t = std::move(t2);
		if (o1 != o2)
			rep.counterexamples.push_back("pair " + to_string(r1) + ", " + to_string(r2) +
			                              ": order not preserved");
		rep.pairs++;
	}
	return rep;
}

} // namespace rcf
