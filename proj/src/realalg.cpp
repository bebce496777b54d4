#include "rcf/realalg.hpp"

#include <memory>
#include <mutex>

namespace rcf {

namespace {

using BiPoly = Poly<IntPoly1>;

IntPoly1 linear_for(const Rat &q)
{
	return IntPoly1(std::vector<Int>{Int(-q.get_num()), q.get_den()});
}

/* Coefficients of p as constants of Z[x], in variable y. */
BiPoly lift_constants(const IntPoly1 &p)
{
	std::vector<IntPoly1> c;
	for (const auto &a : p.coeffs())
		c.push_back(IntPoly1::constant(a));
	return BiPoly(std::move(c));
}

bool root_in_closed(const IntPoly1 &g, const Interval &J)
{
	if (g.degree() <= 0)
		return false;
	if (sign_at(g, J.lo) == 0)
		return true;
	if (J.lo == J.hi)
		return false;
	return sturm_count(sturm_chain(g), J.lo, J.hi) > 0;
}

} // namespace

RealAlg::RealAlg(const Rat &q) : p_(linear_for(q)), I_(q) {}

RealAlg RealAlg::make_clean(const IntPoly1 &sqf, Interval I)
{
	if (I.lo == I.hi)
		return RealAlg(I.lo);
	if (sqf.degree() == 1) {
		Rat r(Int(-sqf[0]), sqf[1]);
		r.canonicalize();
		return RealAlg(r);
	}
	while (sign_at(sqf, I.lo) == 0 || sign_at(sqf, I.hi) == 0) {
		Rat m = I.mid();
		if (sign_at(sqf, m) == 0)
			return RealAlg(m);
		if (descartes_bound(sqf, I.lo, m) == 1)
			I.hi = m;
		else
			I.lo = m;
	}
	/* A rational root n/d has d | lc. Once the width is below 1/lc^2 it is
	 * the simplest rational of the interval. */
	Rat s = simplest_between(I.lo, I.hi);
	if (s.get_den() > abs(sqf.lc()))
		return RealAlg(sqf, std::move(I));
	if (sign_at(sqf, s) == 0)
		return RealAlg(s);
	Interval J = refine_root(sqf, I, Rat(Int(1), Int(sqf.lc() * sqf.lc())));
	if (J.lo == J.hi)
		return RealAlg(J.lo);
	s = simplest_between(J.lo, J.hi);
	if (s.get_den() <= abs(sqf.lc()) && sign_at(sqf, s) == 0)
		return RealAlg(s);
	return RealAlg(sqf, std::move(I));
}

RealAlg RealAlg::from_root(const IntPoly1 &p, const Interval &I)
{
	if (p.is_zero())
		throw DomainError("zero polynomial does not define an algebraic number");
	if (I.hi < I.lo)
		throw DomainError("interval endpoints out of order");
	IntPoly1 q = sqfree(p);
	int n = (sign_at(q, I.lo) == 0 ? 1 : 0);
	if (I.lo < I.hi)
		n += sturm_count(sturm_chain(q), I.lo, I.hi);
	if (n != 1)
		throw DomainError("interval [" + to_string(I.lo) + ", " + to_string(I.hi) +
		                  "] contains " + std::to_string(n) + " roots of " + to_string(q));
	if (sign_at(q, I.lo) == 0)
		return RealAlg(I.lo);
	if (sign_at(q, I.hi) == 0)
		return RealAlg(I.hi);
	return make_clean(q, I);
}

std::vector<RealAlg> RealAlg::roots(const IntPoly1 &p)
{
	IntPoly1 q = sqfree(p);
	std::vector<RealAlg> out;
	for (auto &I : isolate_real_roots(q))
		out.push_back(I.lo == I.hi ? RealAlg(I.lo) : make_clean(q, I));
	return out;
}

RealAlg RealAlg::resolve(const IntPoly1 &p, const Approx &v)
{
	IntPoly1 q = sqfree(p);
	if (q.degree() == 1) {
		Rat r(Int(-q[0]), q[1]);
		r.canonicalize();
		return RealAlg(r);
	}
	for (unsigned level = 0;; level++) {
		Interval I = v.at(level);
		bool zlo = sign_at(q, I.lo) == 0;
		if (I.lo == I.hi) {
			if (!zlo)
				throw DomainError("enclosure does not contain a root");
			return RealAlg(I.lo);
		}
		bool zhi = sign_at(q, I.hi) == 0;
		int inner = descartes_bound(q, I.lo, I.hi);
		if (inner + zlo + zhi == 1) {
			if (zlo)
				return RealAlg(I.lo);
			if (zhi)
				return RealAlg(I.hi);
			return make_clean(q, I);
		}
		if (level > 4 * kMaxApproxLevel)
			throw DomainError("root resolution did not converge");
	}
}

RealAlg RealAlg::bisected() const
{
	if (is_rational())
		return *this;
	Rat m = I_.mid();
	int sm = sign_at(p_, m);
	if (sm == 0)
		return RealAlg(m);
	if (sm != sign_at(p_, I_.lo))
		return RealAlg(p_, Interval(I_.lo, m));
	return RealAlg(p_, Interval(m, I_.hi));
}

RealAlg RealAlg::refined(const Rat &w) const
{
	if (is_rational() || I_.width() <= w)
		return *this;
	Interval J = refine_root(p_, I_, w);
	if (J.lo == J.hi)
		return RealAlg(J.lo);
	return RealAlg(p_, std::move(J));
}

Approx RealAlg::approx() const
{
	if (is_rational())
		return Approx::exact(I_.lo);
	struct State {
		std::mutex m;
		RealAlg cur;
	};
	auto st = std::make_shared<State>();
	st->cur = *this;
	return Approx([st](unsigned level) {
		std::lock_guard<std::mutex> lock(st->m);
		st->cur = st->cur.refined(Rat(Int(1), Int(1) << level));
		return st->cur.I_;
	});
}

int RealAlg::sign() const { return from_ordering(compare(*this, Rat(0))); }

std::string RealAlg::str() const
{
	return "alg(" + to_string(p_) + ", " + to_string(I_.lo) + ", " + to_string(I_.hi) + ")";
}

std::string RealAlg::display() const
{
	return is_rational() ? to_string(I_.lo) : str();
}

double RealAlg::to_double() const
{
	return refined(Rat(Int(1), Int(1) << 60)).I_.mid().get_d();
}

int sign_at(const IntPoly1 &q, const RealAlg &a)
{
	if (a.is_rational())
		return sign_at(q, a.rational());
	if (q.is_zero())
		return 0;
	IntPoly1 g = ring_gcd(q, a.defining());
	if (g.degree() >= 1 && sign_at(g, a.lo()) * sign_at(g, a.hi()) < 0)
		return 0;
	RealAlg r = a;
	for (;;) {
		if (r.is_rational())
			return sign_at(q, r.rational());
		if (descartes_bound(q, r.lo(), r.hi()) == 0)
			return sign_at(q, r.interval().mid());
		r = r.bisected();
	}
}

std::strong_ordering compare(const RealAlg &a, const Rat &b)
{
	if (a.is_rational())
		return to_ordering(cmp(a.rational(), b));
	RealAlg r = a;
	for (;;) {
		if (r.is_rational())
			return to_ordering(cmp(r.rational(), b));
		if (r.hi() < b)
			return std::strong_ordering::less;
		if (r.lo() > b)
			return std::strong_ordering::greater;
		if (sign_at(r.defining(), b) == 0)
			return std::strong_ordering::equal;
		r = r.bisected();
	}
}

std::strong_ordering compare(const RealAlg &a, const RealAlg &b)
{
	if (b.is_rational())
		return compare(a, b.rational());
	if (a.is_rational())
		return to_ordering(-from_ordering(compare(b, a.rational())));
	if (!disjoint(a.interval(), b.interval())) {
		IntPoly1 g = ring_gcd(a.defining(), b.defining());
		Interval J{a.lo() > b.lo() ? a.lo() : b.lo(), a.hi() < b.hi() ? a.hi() : b.hi()};
		if (root_in_closed(g, J))
			return std::strong_ordering::equal;
	}
	RealAlg x = a, y = b;
	for (;;) {
		if (x.is_rational() || y.is_rational())
			return compare(x, y);
		if (x.hi() < y.lo())
			return std::strong_ordering::less;
		if (y.hi() < x.lo())
			return std::strong_ordering::greater;
		if (x.interval().width() >= y.interval().width())
			x = x.bisected();
		else
			y = y.bisected();
	}
}

namespace {

/* p(x - y) as a polynomial in y over Z[x]. */
BiPoly shifted_in_y(const IntPoly1 &p, int sign_y)
{
	/* x + sign_y * y */
	BiPoly lin(std::vector<IntPoly1>{IntPoly1::var(), IntPoly1(sign_y)});
	BiPoly acc;
	for (int i = p.degree(); i >= 0; i--)
		acc = acc * lin + BiPoly::constant(IntPoly1::constant(p[i]));
	return acc;
}

/* y^m p(x / y) */
BiPoly homogenized_quotient(const IntPoly1 &p)
{
	int m = p.degree();
	std::vector<IntPoly1> c(m + 1);
	for (int i = 0; i <= m; i++)
		c[m - i] = IntPoly1::monomial(p[i], i);
	return BiPoly(std::move(c));
}

RealAlg sum(const RealAlg &a, const RealAlg &b, int sgn_b)
{
	if (a.is_rational() && b.is_rational())
		return RealAlg(Rat(a.rational() + sgn_b * b.rational()));
	/* x = a + s b  <=>  b = s (x - a): Res_y(p_a(y), p_b(s (x - y))) */
	IntPoly1 pb = b.defining();
	if (sgn_b < 0)
		pb = scale_var(pb, Int(-1));
	IntPoly1 r = resultant(lift_constants(a.defining()), shifted_in_y(pb, -1));
	Approx v = sgn_b > 0 ? a.approx() + b.approx() : a.approx() - b.approx();
	return RealAlg::resolve(r, v);
}

RealAlg product(const RealAlg &a, const RealAlg &b)
{
	if (a.is_rational() && b.is_rational())
		return RealAlg(Rat(a.rational() * b.rational()));
	if (a.sign() == 0 || b.sign() == 0)
		return RealAlg(Rat(0));
	IntPoly1 r = resultant(lift_constants(a.defining()), homogenized_quotient(b.defining()));
	return RealAlg::resolve(r, a.approx() * b.approx());
}

} // namespace

RealAlg operator-(const RealAlg &a)
{
	if (a.is_rational())
		return RealAlg(Rat(-a.rational()));
	return RealAlg::from_root(scale_var(a.defining(), Int(-1)), Interval(-a.hi(), -a.lo()));
}

RealAlg inverse(const RealAlg &a)
{
	if (a.sign() == 0)
		throw DomainError("division by zero in k");
	if (a.is_rational())
		return RealAlg(Rat(1 / a.rational()));
	RealAlg r = a;
	while (r.interval().contains_zero())
		r = r.bisected();
	if (r.is_rational())
		return RealAlg(Rat(1 / r.rational()));
	return RealAlg::from_root(reverse(r.defining()), Interval(1 / r.hi(), 1 / r.lo()));
}

RealAlg operator+(const RealAlg &a, const RealAlg &b) { return sum(a, b, +1); }
RealAlg operator-(const RealAlg &a, const RealAlg &b) { return sum(a, b, -1); }
RealAlg operator*(const RealAlg &a, const RealAlg &b) { return product(a, b); }
RealAlg operator/(const RealAlg &a, const RealAlg &b) { return product(a, inverse(b)); }

RealAlg alg_arith(AlgOp op, const RealAlg &a, const RealAlg &b)
{
	switch (op) {
	case AlgOp::add: return a + b;
	case AlgOp::sub: return a - b;
	case AlgOp::mul: return a * b;
	case AlgOp::div: return a / b;
	case AlgOp::neg: return -a;
	case AlgOp::inv: return inverse(a);
	}
	throw DomainError("unknown operation");
}

RealAlg eval_rational_function(const IntPoly1 &num, const IntPoly1 &den, const RealAlg &a)
{
	if (den.is_zero())
		throw DomainError("division by zero in k");
	if (a.is_rational()) {
		Rat d = eval(den, a.rational());
		if (sgn(d) == 0)
			throw DomainError("division by zero in k");
		return RealAlg(Rat(eval(num, a.rational()) / d));
	}
	if (sign_at(den, a) == 0)
		throw DomainError("division by zero in k");
	/* Res_y(p_a(y), z den(y) - num(y)) */
	int n = std::max(num.degree(), den.degree());
	std::vector<IntPoly1> c(n + 1);
	for (int i = 0; i <= n; i++)
		c[i] = IntPoly1(std::vector<Int>{Int(-num[i]), den[i]});
	IntPoly1 r = resultant(lift_constants(a.defining()), BiPoly(std::move(c)));
	Approx x = a.approx();
	Approx v([x, num, den](unsigned l) {
		for (unsigned k = l;; k++) {
			Interval X = x.at(k);
			Interval d = eval(den, X);
			if (!d.contains_zero())
				return eval(num, X) / d;
		}
	});
	return RealAlg::resolve(r, v);
}

} // namespace rcf
