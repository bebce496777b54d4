#include "rcf/upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace rcf {

Rat eval(const IntPoly1 &p, const Rat &x)
{
	if (p.is_zero())
		return Rat(0);
	/* Horner over the common denominator: sum c_i n^i d^(deg-i) / d^deg. */
	const Int &n = x.get_num();
	const Int &d = x.get_den();
	int deg = p.degree();
	Int acc = p[deg];
	Int dp(1);
	for (int i = deg - 1; i >= 0; i--) {
		dp *= d;
		acc = acc * n + p[i] * dp;
	}
	Rat r(acc, dp);
	r.canonicalize();
	return r;
}

int sign_at(const IntPoly1 &p, const Rat &x) { return sgn(eval(p, x)); }

Interval eval(const IntPoly1 &p, const Interval &x)
{
	Interval acc{Rat(0)};
	for (int i = p.degree(); i >= 0; i--)
		acc = acc * x + Interval(Rat(p[i]));
	return acc;
}

IntPoly1 clear_denominators(const RatPoly1 &p)
{
	Int l(1);
	for (const auto &c : p)
		if (sgn(c) != 0)
			mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
	std::vector<Int> r;
	r.reserve(p.size());
	for (const auto &c : p) {
		Rat s = c * l;
		r.push_back(s.get_num());
	}
	return primitive_part(IntPoly1(std::move(r)));
}

IntPoly1 taylor_shift(const IntPoly1 &p, const Int &a)
{
	std::vector<Int> c = p.coeffs();
	int n = static_cast<int>(c.size()) - 1;
	if (n <= 0 || a == 0)
		return p;
	for (int i = 0; i < n; i++)
		for (int j = n - 1; j >= i; j--)
			c[j] += a * c[j + 1];
	return IntPoly1(std::move(c));
}

IntPoly1 scale_var(const IntPoly1 &p, const Int &c)
{
	std::vector<Int> r = p.coeffs();
	Int f(1);
	for (auto &x : r) {
		x *= f;
		f *= c;
	}
	return IntPoly1(std::move(r));
}

IntPoly1 reverse(const IntPoly1 &p)
{
	std::vector<Int> r(p.coeffs().rbegin(), p.coeffs().rend());
	return IntPoly1(std::move(r));
}

int sign_variations(const IntPoly1 &p)
{
	int v = 0, last = 0;
	for (const auto &c : p.coeffs()) {
		int s = sgn(c);
		if (s == 0)
			continue;
		if (last != 0 && s != last)
			v++;
		last = s;
	}
	return v;
}

namespace {

/* Variations for the roots of q in (0, 1). */
int descartes01(const IntPoly1 &q)
{
	return sign_variations(taylor_shift(reverse(q), Int(1)));
}

} // namespace

int descartes_bound(const IntPoly1 &p, const Rat &a, const Rat &b)
{
	if (p.degree() <= 0)
		return 0;
	/* r(s) = D^n p((A + (B - A) s) / D) with a = A/D, b = B/D. */
	Int D;
	mpz_lcm(D.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
	Rat aD = a * D, bD = b * D;
	Int A = aD.get_num(), B = bD.get_num();
	std::vector<Int> c = p.coeffs();
	int n = p.degree();
	Int f(1);
	for (int i = n; i >= 0; i--) {
		c[i] *= f;
		f *= D;
	}
	IntPoly1 r = scale_var(taylor_shift(IntPoly1(std::move(c)), A), Int(B - A));
	return descartes01(r);
}

Int cauchy_bound(const IntPoly1 &p)
{
	/* 1 + max |c_i / c_n|, rounded up to a power of two. */
	if (p.degree() <= 0)
		return Int(1);
	Int m(0);
	Int l = abs(p.lc());
	for (int i = 0; i < p.degree(); i++) {
		Int a = abs(p[i]);
		Int q;
		mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), l.get_mpz_t());
		if (q > m)
			m = q;
	}
	Int b = m + 1;
	Int pw(1);
	while (pw <= b)
		pw *= 2;
	return pw;
}

namespace {

struct Isolator {
	std::vector<Interval> out;

	/* Roots of q in (0,1) correspond to roots of the original in
	 * (off + c/2^k * scale, off + (c+1)/2^k * scale), scaled by sign. */
	void run(const IntPoly1 &q, const Int &c, unsigned k, const Int &B, int dir)
	{
		int v = descartes01(q);
		if (v == 0)
			return;
		Int den = Int(1) << k;
		auto point = [&](const Int &num, unsigned kk) {
			Rat r(num * B, Int(1) << kk);
			r.canonicalize();
			return dir > 0 ? r : Rat(-r);
		};
		if (v == 1) {
			Rat lo = point(c, k), hi = point(c + 1, k);
			if (dir < 0)
				std::swap(lo, hi);
			out.push_back({lo, hi});
			return;
		}
		int n = q.degree();
		/* qL(x) = 2^n q(x/2), qR(x) = qL(x + 1) */
		std::vector<Int> cl = q.coeffs();
		for (int i = 0; i <= n; i++)
			cl[i] <<= (n - i);
		IntPoly1 qL(std::move(cl));
		IntPoly1 qR = taylor_shift(qL, Int(1));
		if (sgn(qR[0]) == 0)
			out.push_back(Interval(point(2 * c + 1, k + 1)));
		run(qL, 2 * c, k + 1, B, dir);
		run(qR, 2 * c + 1, k + 1, B, dir);
	}
};

/* Moves endpoints off roots so that p changes sign across the interval. */
Interval clean(const IntPoly1 &p, Interval I)
{
	while (I.lo != I.hi && (sign_at(p, I.lo) == 0 || sign_at(p, I.hi) == 0)) {
		Rat m = I.mid();
		if (sign_at(p, m) == 0)
			return Interval(m);
		if (descartes_bound(p, I.lo, m) == 1)
			I.hi = m;
		else
			I.lo = m;
	}
	return I;
}

Interval bisect_once(const IntPoly1 &p, const Interval &I)
{
	if (I.lo == I.hi)
		return I;
	Rat m = I.mid();
	int sm = sign_at(p, m);
	if (sm == 0)
		return Interval(m);
	if (sm != sign_at(p, I.lo))
		return {I.lo, m};
	return {m, I.hi};
}

} // namespace

namespace {

/* floor(log2(1/w)) for 0 < w */
long neg_log2(const Rat &w)
{
	return static_cast<long>(mpz_sizeinbase(w.get_den_mpz_t(), 2)) -
	       static_cast<long>(mpz_sizeinbase(w.get_num_mpz_t(), 2));
}

/* multiple of 2^-k nearest to v */
Rat round_dyadic(const Rat &v, long k)
{
	Int s = Int(v.get_num()) << k, q;
	mpz_fdiv_q(q.get_mpz_t(), s.get_mpz_t(), v.get_den_mpz_t());
	Rat r(q, Int(1) << k);
	r.canonicalize();
	return r;
}

} // namespace

Interval refine_root(const IntPoly1 &p, Interval I, const Rat &w)
{
	if (I.lo == I.hi || I.width() <= w)
		return I;
	IntPoly1 dp = derivative(p);
	int slo = sign_at(p, I.lo);
	long slack = 4;
	while (I.width() > w) {
		Rat m = I.mid();
		long k = neg_log2(I.width());
		bool moved = false;
		Rat dv = eval(dp, m);
		if (k > 8 && sgn(dv) != 0) {
			Rat N = m - eval(p, m) / dv;
			long kk = std::max(2 * k - slack, k + 3);
			Rat c = round_dyadic(N, kk), eps(Int(1), Int(1) << kk);
			Rat a = std::max(I.lo, Rat(c - eps)), b = std::min(I.hi, Rat(c + eps));
			if (a < b) {
				int sa = sign_at(p, a), sb = sign_at(p, b);
				if (sa == 0)
					return Interval(a);
				if (sb == 0)
					return Interval(b);
				if (sa == slo && sb != slo) {
					I = {a, b};
					moved = true;
					slack = std::max(4L, slack - 2);
				}
			}
			if (!moved)
				slack += 4;
		}
		if (!moved) {
			int sm = sign_at(p, m);
			if (sm == 0)
				return Interval(m);
			if (sm == slo)
				I.lo = m;
			else
				I.hi = m;
		}
	}
	return I;
}

std::vector<Interval> isolate_real_roots(const IntPoly1 &p)
{
	if (p.is_zero())
		throw DomainError("zero polynomial has no isolated roots");
	IntPoly1 q = sqfree(p);
	if (q.degree() <= 0)
		return {};
	Int B = cauchy_bound(q);
	Isolator iso;
	bool zero_root = sgn(q[0]) == 0;
	IntPoly1 qz = zero_root ? exact_div(q, IntPoly1::var()) : q;
	/* positive roots: qz(B x) on (0,1) */
	iso.run(scale_var(qz, B), Int(0), 0, B, +1);
	/* negative roots: qz(-B x) on (0,1) */
	iso.run(scale_var(qz, Int(-B)), Int(0), 0, B, -1);
	if (zero_root)
		iso.out.push_back(Interval(Rat(0)));
	auto &v = iso.out;
	std::sort(v.begin(), v.end(), [](const Interval &a, const Interval &b) {
		return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
	});
	for (auto &I : v)
		I = clean(q, I);
	/* make neighbouring closed intervals disjoint */
	for (size_t i = 0; i + 1 < v.size(); i++) {
		while (!(v[i].hi < v[i + 1].lo)) {
			if (v[i].lo != v[i].hi)
				v[i] = bisect_once(q, v[i]);
			if (v[i + 1].lo != v[i + 1].hi)
				v[i + 1] = bisect_once(q, v[i + 1]);
		}
	}
	return v;
}

SturmChain sturm_chain(const IntPoly1 &p)
{
	SturmChain c;
	if (p.is_zero())
		return c;
	c.seq.push_back(primitive_part(p));
	if (p.degree() == 0)
		return c;
	c.seq.push_back(primitive_part(derivative(p)));
	for (;;) {
		const IntPoly1 &a = c.seq[c.seq.size() - 2];
		const IntPoly1 &b = c.seq.back();
		if (b.degree() == 0)
			break;
		IntPoly1 r = prem(a, b);
		if (r.is_zero())
			break;
		int e = a.degree() - b.degree() + 1;
		bool flip = sgn(b.lc()) < 0 && (e % 2 == 1);
		/* next = -rem(a, b) up to a positive factor */
		IntPoly1 next = flip ? r : -r;
		Int ct = content(next);
		c.seq.push_back(exact_div_scalar(next, ct));
	}
	return c;
}

namespace {

int variations_at(const SturmChain &c, const Rat &x)
{
	int v = 0, last = 0;
	for (const auto &p : c.seq) {
		int s = sign_at(p, x);
		if (s == 0)
			continue;
		if (last != 0 && s != last)
			v++;
		last = s;
	}
	return v;
}

int variations_inf(const SturmChain &c, bool plus)
{
	int v = 0, last = 0;
	for (const auto &p : c.seq) {
		int s = sgn(p.lc());
		if (!plus && p.degree() % 2 == 1)
			s = -s;
		if (last != 0 && s != last)
			v++;
		last = s;
	}
	return v;
}

} // namespace

int sturm_count(const SturmChain &c, const Rat &a, const Rat &b)
{
	if (c.seq.empty() || !(a < b))
		return 0;
	return variations_at(c, a) - variations_at(c, b);
}

int sturm_count_all(const SturmChain &c)
{
	if (c.seq.empty())
		return 0;
	return variations_inf(c, false) - variations_inf(c, true);
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m)
{
	u64 r = 1;
	while (e) {
		if (e & 1)
			r = mulmod(r, a, m);
		a = mulmod(a, a, m);
		e >>= 1;
	}
	return r;
}

std::vector<u64> reduce(const IntPoly1 &p, u64 m)
{
	std::vector<u64> r;
	Int M(std::to_string(m));
	for (const auto &c : p.coeffs()) {
		Int t;
		mpz_fdiv_r(t.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
		r.push_back(std::stoull(t.get_str()));
	}
	while (!r.empty() && r.back() == 0)
		r.pop_back();
	return r;
}

std::vector<u64> gcd_mod(std::vector<u64> a, std::vector<u64> b, u64 m)
{
	while (!b.empty()) {
		u64 inv = powmod(b.back(), m - 2, m);
		while (a.size() >= b.size()) {
			u64 f = mulmod(a.back(), inv, m);
			size_t off = a.size() - b.size();
			for (size_t i = 0; i < b.size(); i++)
				a[off + i] = (a[off + i] + m - mulmod(f, b[i], m)) % m;
			while (!a.empty() && a.back() == 0)
				a.pop_back();
			if (a.empty())
				break;
		}
		std::swap(a, b);
	}
	return a;
}

} // namespace

bool squarefree_mod_p(const IntPoly1 &p)
{
	static const u64 primes[] = {2305843009213693951ull, 4611686018427387847ull,
	                             1000000000000000003ull};
	if (p.degree() <= 1)
		return true;
	IntPoly1 d = derivative(p);
	for (u64 m : primes) {
		auto a = reduce(p, m);
		if (static_cast<int>(a.size()) - 1 != p.degree())
			continue;
		auto b = reduce(d, m);
		if (b.empty())
			continue;
		if (gcd_mod(a, b, m).size() == 1)
			return true;
	}
	return false;
}

IntPoly1 sqfree(const IntPoly1 &p)
{
	if (p.degree() >= 1 && squarefree_mod_p(p))
		return primitive_part(p);
	return squarefree_part(p);
}

Int root_magnitude_bound(const IntPoly1 &p)
{
	if (p.degree() <= 0)
		return Int(1);
	Rat m(0);
	for (const auto &I : isolate_real_roots(p)) {
		Rat a = abs(I.lo), b = abs(I.hi);
		if (a > m)
			m = a;
		if (b > m)
			m = b;
	}
	return ceil_rat(m) + 1;
}

int max_coeff_bits(const IntPoly1 &p)
{
	size_t b = 0;
	for (const auto &c : p.coeffs())
		b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
	return static_cast<int>(b);
}

std::string to_string(const IntPoly1 &p, char var)
{
	if (p.is_zero())
		return "0";
	std::string s;
	for (int i = p.degree(); i >= 0; i--) {
		const Int &c = p[i];
		if (sgn(c) == 0)
			continue;
		Int a = abs(c);
		if (s.empty())
			s += sgn(c) < 0 ? "-" : "";
		else
			s += sgn(c) < 0 ? " - " : " + ";
		bool one = a == 1;
		if (i == 0 || !one)
			s += a.get_str();
		if (i > 0) {
			if (!one)
				s += "*";
			s += var;
			if (i > 1)
				s += "^" + std::to_string(i);
		}
	}
	return s;
}

} // namespace rcf
