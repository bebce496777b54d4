#include "rcf/poly2.hpp"

#include <algorithm>
#include <tuple>

namespace rcf {

IntPoly2 constant2(const Int &c) { return IntPoly2::constant(IntPoly1::constant(c)); }
IntPoly2 var_x2() { return IntPoly2::constant(IntPoly1::var()); }
IntPoly2 var_y2() { return IntPoly2::var(); }
IntPoly2 from_x(const IntPoly1 &p) { return IntPoly2::constant(p); }

IntPoly2 from_y(const IntPoly1 &p)
{
	std::vector<IntPoly1> c;
	for (const auto &a : p.coeffs())
		c.push_back(IntPoly1::constant(a));
	return IntPoly2(std::move(c));
}

int deg_x(const IntPoly2 &p)
{
	int d = -1;
	for (const auto &c : p.coeffs())
		d = std::max(d, c.degree());
	return d;
}

int deg_y(const IntPoly2 &p) { return p.degree(); }

int total_degree(const IntPoly2 &p)
{
	int d = -1;
	for (int j = 0; j <= p.degree(); j++)
		if (!p[j].is_zero())
			d = std::max(d, j + p[j].degree());
	return d;
}

bool is_y_free(const IntPoly2 &p) { return p.degree() <= 0; }

bool is_x_free(const IntPoly2 &p) { return deg_x(p) <= 0; }

IntPoly1 as_x_poly(const IntPoly2 &p)
{
	if (p.degree() > 0)
		throw DomainError("polynomial depends on y: " + to_string(p));
	return p[0];
}

IntPoly2 swap_xy(const IntPoly2 &p)
{
	int dx = deg_x(p);
	std::vector<std::vector<Int>> c(std::max(dx + 1, 0),
	                                std::vector<Int>(p.degree() + 1, Int(0)));
	for (int j = 0; j <= p.degree(); j++)
		for (int i = 0; i <= p[j].degree(); i++)
			c[i][j] = p[j][i];
	std::vector<IntPoly1> out;
	for (auto &row : c)
		out.push_back(IntPoly1(std::move(row)));
	return IntPoly2(std::move(out));
}

IntPoly2 diff_x(const IntPoly2 &p)
{
	std::vector<IntPoly1> c;
	for (const auto &a : p.coeffs())
		c.push_back(derivative(a));
	return IntPoly2(std::move(c));
}

IntPoly2 diff_y(const IntPoly2 &p) { return derivative(p); }

Int int_content(const IntPoly2 &p)
{
	Int g(0);
	for (const auto &c : p.coeffs())
		g = ring_gcd(g, content(c));
	return g;
}

int leading_sign2(const IntPoly2 &p) { return lead_sign(p); }

IntPoly2 int_primitive(const IntPoly2 &p)
{
	if (p.is_zero())
		return p;
	Int g = int_content(p);
	if (leading_sign2(p) < 0)
		g = -g;
	return exact_div_scalar(p, IntPoly1::constant(g));
}

namespace {

/* d^k a(n/d) for k >= deg a */
Int homogeneous_value(const IntPoly1 &a, const Int &n, const Int &d, int k)
{
	Int acc(0);
	for (int i = 0; i <= a.degree(); i++)
		acc += a[i] * int_pow(n, i) * int_pow(d, k - i);
	return acc;
}

} // namespace

IntPoly1 at_x(const IntPoly2 &p, const Rat &x0)
{
	int k = std::max(deg_x(p), 0);
	std::vector<Int> c;
	for (const auto &a : p.coeffs())
		c.push_back(homogeneous_value(a, x0.get_num(), x0.get_den(), k));
	return IntPoly1(std::move(c));
}

IntPoly1 at_y(const IntPoly2 &p, const Rat &y0) { return at_x(swap_xy(p), y0); }

Interval eval_box(const IntPoly2 &p, const Interval &x, const Interval &y)
{
	Interval acc(Rat(0));
	for (int j = p.degree(); j >= 0; j--)
		acc = acc * y + eval(p[j], x);
	return acc;
}

IntPoly1 resultant2(const IntPoly2 &p, const IntPoly2 &q, Var v)
{
	if (v == Var::x)
		return resultant2(swap_xy(p), swap_xy(q), Var::y);
	if (p.degree() <= 0 && q.degree() <= 0)
		throw DomainError("both polynomials are constant in the eliminated variable");
	return resultant(p, q);
}

IntPoly1 discriminant2(const IntPoly2 &p, Var v)
{
	if (v == Var::x)
		return discriminant2(swap_xy(p), Var::y);
	if (p.degree() <= 0)
		throw DomainError("discriminant of a polynomial of degree 0");
	return resultant(p, derivative(p));
}

namespace {

IntPoly3 lift3(const IntPoly1 &p)
{
	std::vector<IntPoly2> c;
	for (const auto &a : p.coeffs())
		c.push_back(constant2(a));
	return IntPoly3(std::move(c));
}

/* Polynomial in z vanishing at p(X, Y) for roots X of px and Y of py. */
IntPoly1 value_polynomial(const IntPoly2 &p, const IntPoly1 &px, const IntPoly1 &py)
{
	/* z - p(x, y) in y over Z[x, z]; inner IntPoly2 has z outer, x inner */
	std::vector<IntPoly2> c;
	for (int j = 0; j <= p.degree(); j++)
		c.push_back(-from_x(p[j]));
	if (c.empty())
		c.push_back(IntPoly2());
	c[0] += var_y2();
	IntPoly2 r = resultant(lift3(py), IntPoly3(std::move(c)));
	/* now eliminate x */
	IntPoly2 s = swap_xy(r);
	std::vector<IntPoly1> lx;
	for (const auto &a : px.coeffs())
		lx.push_back(IntPoly1::constant(a));
	return resultant(IntPoly2(std::move(lx)), s);
}

} // namespace

RealAlg eval2(const IntPoly2 &p, const RealAlg &x, const RealAlg &y)
{
	if (x.is_rational()) {
		const Rat &x0 = x.rational();
		IntPoly1 g = at_x(p, x0);
		Int scale = int_pow(x0.get_den(), std::max(deg_x(p), 0));
		if (y.is_rational())
			return RealAlg(Rat(eval(g, y.rational()) / Rat(scale)));
		return eval_rational_function(g, IntPoly1::constant(scale), y);
	}
	if (y.is_rational()) {
		const Rat &y0 = y.rational();
		IntPoly1 g = at_y(p, y0);
		Int scale = int_pow(y0.get_den(), std::max(p.degree(), 0));
		return eval_rational_function(g, IntPoly1::constant(scale), x);
	}
	IntPoly1 r = value_polynomial(p, x.defining(), y.defining());
	Approx ax = x.approx(), ay = y.approx();
	Approx v([p, ax, ay](unsigned l) { return eval_box(p, ax.at(l), ay.at(l)); });
	return RealAlg::resolve(r, v);
}

int sign_at2(const IntPoly2 &p, const RealAlg &x, const RealAlg &y)
{
	if (x.is_rational())
		return sign_at(at_x(p, x.rational()), y);
	if (y.is_rational())
		return sign_at(at_y(p, y.rational()), x);
	return eval2(p, x, y).sign();
}

std::string to_string(const IntPoly2 &p, char vx, char vy)
{
	if (p.is_zero())
		return "0";
	std::vector<std::tuple<int, int, Int>> terms;
	for (int j = 0; j <= p.degree(); j++)
		for (int i = 0; i <= p[j].degree(); i++)
			if (sgn(p[j][i]) != 0)
				terms.emplace_back(i, j, p[j][i]);
	std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) {
		int da = std::get<0>(a) + std::get<1>(a), db = std::get<0>(b) + std::get<1>(b);
		if (da != db)
			return da > db;
		return std::get<0>(a) > std::get<0>(b);
	});
	std::string s;
	bool first = true;
	for (const auto &[i, j, c] : terms) {
		bool neg = sgn(c) < 0;
		if (first)
			s += neg ? "-" : "";
		else
			s += neg ? " - " : " + ";
		first = false;
		Int a = abs(c);
		std::string mono;
		auto power = [&](char v, int e) {
			if (e == 0)
				return;
			if (!mono.empty())
				mono += "*";
			mono += v;
			if (e > 1)
				mono += "^" + std::to_string(e);
		};
		power(vx, i);
		power(vy, j);
		if (mono.empty())
			s += a.get_str();
		else if (a == 1)
			s += mono;
		else
			s += a.get_str() + "*" + mono;
	}
	return s;
}

RatFunc2::RatFunc2(IntPoly2 n, IntPoly2 d) : num(std::move(n)), den(std::move(d))
{
	if (den.is_zero())
		throw DomainError("division by zero");
	if (num.is_zero()) {
		den = constant2(Int(1));
		return;
	}
	IntPoly2 g = ring_gcd(num, den);
	if (!(g == constant2(Int(1)))) {
		num = exact_div(num, g);
		den = exact_div(den, g);
	}
	if (leading_sign2(den) < 0) {
		num = -num;
		den = -den;
	}
}

RatFunc2 operator+(const RatFunc2 &a, const RatFunc2 &b)
{
	if (a.den == b.den)
		return RatFunc2(a.num + b.num, a.den);
	return RatFunc2(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatFunc2 operator-(const RatFunc2 &a) { return RatFunc2(-a.num, a.den); }

RatFunc2 operator-(const RatFunc2 &a, const RatFunc2 &b) { return a + (-b); }

RatFunc2 operator*(const RatFunc2 &a, const RatFunc2 &b)
{
	return RatFunc2(a.num * b.num, a.den * b.den);
}

RatFunc2 operator/(const RatFunc2 &a, const RatFunc2 &b)
{
	if (b.is_zero())
		throw DomainError("division by zero");
	return RatFunc2(a.num * b.den, a.den * b.num);
}

std::string to_string(const RatFunc2 &f)
{
	if (f.den == constant2(Int(1)))
		return to_string(f.num);
	return "(" + to_string(f.num) + ")/(" + to_string(f.den) + ")";
}

} // namespace rcf
