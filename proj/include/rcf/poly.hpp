#pragma once

#include "rcf/numeric.hpp"

#include <cassert>
#include <utility>
#include <vector>

namespace rcf {

template <class R> class Poly;
template <class R> bool is_zero(const Poly<R> &p);
template <class R> int lead_sign(const Poly<R> &p);

/* Dense univariate polynomial over an integral domain R, constant term
 * first. R is Int or, recursively, Poly<...>. The zero polynomial has no
 * stored coefficients; otherwise the last coefficient is nonzero. */
template <class R>
class Poly {
public:
	using Coeff = R;

	Poly() = default;
	Poly(long c)
	{
		if (c != 0)
			c_.push_back(R(c));
	}
	explicit Poly(std::vector<R> c) : c_(std::move(c)) { trim(); }

	static Poly constant(R c)
	{
		Poly p;
		if (!rcf::is_zero(c))
			p.c_.push_back(std::move(c));
		return p;
	}

	static Poly monomial(R c, int k)
	{
		Poly p;
		if (rcf::is_zero(c))
			return p;
		p.c_.assign(k + 1, R(0));
		p.c_[k] = std::move(c);
		return p;
	}

	/* The variable itself. */
	static Poly var() { return monomial(R(1), 1); }

	int degree() const { return static_cast<int>(c_.size()) - 1; }
	bool is_zero() const { return c_.empty(); }
	bool is_constant() const { return c_.size() <= 1; }

	const R &operator[](int i) const
	{
		static const R zero(0);
		return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : zero;
	}
	const R &lc() const
	{
		assert(!c_.empty());
		return c_.back();
	}
	const std::vector<R> &coeffs() const { return c_; }

	void set(int i, R v)
	{
		if (i >= static_cast<int>(c_.size())) {
			if (rcf::is_zero(v))
				return;
			c_.resize(i + 1, R(0));
		}
		c_[i] = std::move(v);
		trim();
	}

	friend bool operator==(const Poly &a, const Poly &b) { return a.c_ == b.c_; }

	Poly &operator+=(const Poly &b)
	{
		if (b.c_.size() > c_.size())
			c_.resize(b.c_.size(), R(0));
		for (size_t i = 0; i < b.c_.size(); i++)
			c_[i] += b.c_[i];
		trim();
		return *this;
	}
	Poly &operator-=(const Poly &b)
	{
		if (b.c_.size() > c_.size())
			c_.resize(b.c_.size(), R(0));
		for (size_t i = 0; i < b.c_.size(); i++)
			c_[i] -= b.c_[i];
		trim();
		return *this;
	}
	friend Poly operator+(Poly a, const Poly &b) { return a += b; }
	friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
	friend Poly operator-(Poly a)
	{
		for (auto &c : a.c_)
			c = -c;
		return a;
	}
	friend Poly operator*(const Poly &a, const Poly &b)
	{
		if (a.is_zero() || b.is_zero())
			return {};
		std::vector<R> r(a.c_.size() + b.c_.size() - 1, R(0));
		for (size_t i = 0; i < a.c_.size(); i++) {
			if (rcf::is_zero(a.c_[i]))
				continue;
			for (size_t j = 0; j < b.c_.size(); j++)
				r[i + j] += a.c_[i] * b.c_[j];
		}
		return Poly(std::move(r));
	}
	Poly &operator*=(const Poly &b) { return *this = *this * b; }

	/* Scalar multiple. */
	friend Poly scale(Poly a, const R &s)
	{
		if (rcf::is_zero(s))
			return {};
		for (auto &c : a.c_)
			c *= s;
		return a;
	}

	/* Multiplication by var^k. */
	friend Poly shift(const Poly &a, int k)
	{
		if (a.is_zero())
			return a;
		std::vector<R> r(k, R(0));
		r.insert(r.end(), a.c_.begin(), a.c_.end());
		return Poly(std::move(r));
	}

private:
	void trim()
	{
		while (!c_.empty() && rcf::is_zero(c_.back()))
			c_.pop_back();
	}

	std::vector<R> c_;
};

template <class R>
bool is_zero(const Poly<R> &p) { return p.is_zero(); }

template <class R>
int lead_sign(const Poly<R> &p) { return p.is_zero() ? 0 : lead_sign(p.lc()); }

template <class R>
Poly<R> pow(const Poly<R> &b, unsigned e)
{
	Poly<R> r(1), x = b;
	while (e) {
		if (e & 1)
			r *= x;
		e >>= 1;
		if (e)
			x *= x;
	}
	return r;
}

inline Int ring_pow(const Int &b, unsigned e) { return int_pow(b, e); }
template <class R>
Poly<R> ring_pow(const Poly<R> &b, unsigned e) { return pow(b, e); }

template <class R>
Poly<R> derivative(const Poly<R> &p)
{
	std::vector<R> r;
	for (int i = 1; i <= p.degree(); i++)
		r.push_back(p[i] * R(i));
	return Poly<R>(std::move(r));
}

/* Division of every coefficient by s; s must divide exactly. */
template <class R>
Poly<R> exact_div_scalar(const Poly<R> &p, const R &s)
{
	std::vector<R> r;
	r.reserve(p.coeffs().size());
	for (const auto &c : p.coeffs())
		r.push_back(exact_div(c, s));
	return Poly<R>(std::move(r));
}

/* Exact quotient a / b in R[t]; b must divide a. */
template <class R>
Poly<R> exact_div(const Poly<R> &a, const Poly<R> &b)
{
	assert(!b.is_zero());
	if (a.is_zero())
		return {};
	if (b.degree() == 0)
		return exact_div_scalar(a, b.lc());
	int n = a.degree(), m = b.degree();
	if (n < m)
		throw DomainError("inexact polynomial division");
	std::vector<R> rem = a.coeffs();
	std::vector<R> q(n - m + 1, R(0));
	for (int k = n - m; k >= 0; k--) {
		R &top = rem[k + m];
		if (rcf::is_zero(top))
			continue;
		R qc = exact_div(top, b.lc());
		for (int j = 0; j <= m; j++)
			rem[k + j] -= qc * b[j];
		q[k] = std::move(qc);
	}
	for (const auto &c : rem)
		if (!rcf::is_zero(c))
			throw DomainError("inexact polynomial division");
	return Poly<R>(std::move(q));
}

/* Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b. */
template <class R>
Poly<R> prem(const Poly<R> &a, const Poly<R> &b)
{
	assert(!b.is_zero());
	int m = b.degree();
	if (a.degree() < m)
		return a;
	int e = a.degree() - m + 1;
	std::vector<R> r = a.coeffs();
	const R &l = b.lc();
	for (int k = a.degree(); k >= m; k--) {
		R top = r[k];
		for (int i = 0; i < k; i++)
			r[i] *= l;
		r[k] = R(0);
		e--;
		if (rcf::is_zero(top))
			continue;
		for (int j = 0; j < m; j++)
			r[k - m + j] -= top * b[j];
	}
	Poly<R> res(std::move(r));
	if (e > 0)
		res = scale(res, ring_pow(l, e));
	return res;
}

/* Positive gcd of the coefficients (zero for the zero polynomial). */
template <class R>
R content(const Poly<R> &p)
{
	R g(0);
	for (const auto &c : p.coeffs()) {
		g = ring_gcd(g, c);
		if (g == R(1))
			break;
	}
	if (lead_sign(g) < 0)
		g = -g;
	return g;
}

/* p / content(p), with positive leading coefficient. */
template <class R>
Poly<R> primitive_part(const Poly<R> &p)
{
	if (p.is_zero())
		return p;
	R c = content(p);
	if (lead_sign(p) < 0)
		c = -c;
	return exact_div_scalar(p, c);
}

template <class R>
Poly<R> normalize_sign(const Poly<R> &p)
{
	return lead_sign(p) < 0 ? -p : p;
}

/* gcd in R[t], normalized to positive leading coefficient. */
template <class R>
Poly<R> ring_gcd(const Poly<R> &a, const Poly<R> &b)
{
	if (a.is_zero())
		return normalize_sign(b);
	if (b.is_zero())
		return normalize_sign(a);
	R c = ring_gcd(content(a), content(b));
	Poly<R> u = primitive_part(a), v = primitive_part(b);
	if (u.degree() < v.degree())
		std::swap(u, v);
	while (!v.is_zero() && v.degree() > 0) {
		Poly<R> r = prem(u, v);
		u = std::move(v);
		v = r.is_zero() ? r : primitive_part(r);
	}
	if (!v.is_zero())
		return Poly<R>::constant(c);
	return normalize_sign(scale(primitive_part(u), c));
}

/* Resultant with respect to the polynomial variable by the subresultant
 * pseudo-remainder sequence. */
template <class R>
R resultant(Poly<R> a, Poly<R> b)
{
	if (a.is_zero() || b.is_zero())
		return R(0);
	R s(1);
	if (a.degree() < b.degree()) {
		std::swap(a, b);
		if (a.degree() % 2 == 1 && b.degree() % 2 == 1)
			s = -s;
	}
	if (b.degree() == 0)
		return ring_pow(b.lc(), a.degree());
	R ca = content(a), cb = content(b);
	a = exact_div_scalar(a, ca);
	b = exact_div_scalar(b, cb);
	R t = ring_pow(ca, b.degree()) * ring_pow(cb, a.degree());
	R g(1), h(1);
	for (;;) {
		check_budget();
		int delta = a.degree() - b.degree();
		if (a.degree() % 2 == 1 && b.degree() % 2 == 1)
			s = -s;
		Poly<R> r = prem(a, b);
		a = std::move(b);
		if (r.is_zero())
			return R(0);
		b = exact_div_scalar(r, R(g * ring_pow(h, delta)));
		g = a.lc();
		if (delta == 0)
			; /* h unchanged */
		else if (delta == 1)
			h = g;
		else
			h = exact_div(ring_pow(g, delta), ring_pow(h, delta - 1));
		if (b.degree() == 0)
			break;
	}
	int da = a.degree();
	R hh = da == 1 ? b.lc() : exact_div(ring_pow(b.lc(), da), ring_pow(h, da - 1));
	return s * t * hh;
}

/* Evaluation at a point of the coefficient ring. */
template <class R>
R eval(const Poly<R> &p, const R &x)
{
	R acc(0);
	for (int i = p.degree(); i >= 0; i--)
		acc = acc * x + p[i];
	return acc;
}

/* p(q(t)) for q in R[t]. */
template <class R>
Poly<R> compose(const Poly<R> &p, const Poly<R> &q)
{
	Poly<R> acc;
	for (int i = p.degree(); i >= 0; i--)
		acc = acc * q + Poly<R>::constant(p[i]);
	return acc;
}

/* Square-free part: p / gcd(p, p'), primitive with positive lc. */
template <class R>
Poly<R> squarefree_part(const Poly<R> &p)
{
	if (p.degree() <= 0)
		return p.is_zero() ? p : Poly<R>(1);
	Poly<R> g = ring_gcd(p, derivative(p));
	if (g.degree() <= 0)
		return primitive_part(p);
	return primitive_part(exact_div(primitive_part(p), primitive_part(g)));
}

} // namespace rcf
