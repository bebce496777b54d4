#pragma once

#include "rcf/realalg.hpp"

#include <string>

namespace rcf {

/* Bivariate integer polynomial: a polynomial in the second variable (y, or
 * z for branch equations) whose coefficients are polynomials in x. */
using IntPoly2 = Poly<IntPoly1>;
/* Three variables, used only inside eliminations. */
using IntPoly3 = Poly<IntPoly2>;

enum class Var { x, y };

IntPoly2 constant2(const Int &c);
IntPoly2 var_x2();
IntPoly2 var_y2();
/* p(x) as a polynomial constant in y. */
IntPoly2 from_x(const IntPoly1 &p);
/* p(y) as a polynomial constant in x. */
IntPoly2 from_y(const IntPoly1 &p);

int deg_x(const IntPoly2 &p);
int deg_y(const IntPoly2 &p);
int total_degree(const IntPoly2 &p);
bool is_y_free(const IntPoly2 &p);
bool is_x_free(const IntPoly2 &p);
/* The y-free polynomial as an IntPoly1 in x; p must be y-free. */
IntPoly1 as_x_poly(const IntPoly2 &p);

IntPoly2 swap_xy(const IntPoly2 &p);
IntPoly2 diff_x(const IntPoly2 &p);
IntPoly2 diff_y(const IntPoly2 &p);

/* Content over Z, and p divided by it with the sign of the leading
 * coefficient (leading in y, then in x) made positive. */
Int int_content(const IntPoly2 &p);
IntPoly2 int_primitive(const IntPoly2 &p);
/* Sign of the leading coefficient in that order (0 for zero). */
int leading_sign2(const IntPoly2 &p);

/* d^k p(x0, y) for x0 = n/d and k = deg_x p: a positive multiple of the
 * restriction, with integer coefficients. */
IntPoly1 at_x(const IntPoly2 &p, const Rat &x0);
/* The same for y = y0, as a polynomial in x. */
IntPoly1 at_y(const IntPoly2 &p, const Rat &y0);

Interval eval_box(const IntPoly2 &p, const Interval &x, const Interval &y);

/* Resultant eliminating v. Throws DomainError when both inputs are constant
 * in v. */
IntPoly1 resultant2(const IntPoly2 &p, const IntPoly2 &q, Var v);
/* Res_v(p, dp/dv). Throws DomainError for degree 0 in v. */
IntPoly1 discriminant2(const IntPoly2 &p, Var v);

/* Exact value of p(x, y). */
RealAlg eval2(const IntPoly2 &p, const RealAlg &x, const RealAlg &y);
/* Exact sign of p(x, y). */
int sign_at2(const IntPoly2 &p, const RealAlg &x, const RealAlg &y);

/* Terms in decreasing total degree, then decreasing power of x. */
std::string to_string(const IntPoly2 &p, char vx = 'x', char vy = 'y');

/* A quotient of bivariate polynomials kept in lowest terms with the leading
 * coefficient of den positive. */
struct RatFunc2 {
	IntPoly2 num, den;

	RatFunc2() : num(), den(constant2(Int(1))) {}
	RatFunc2(IntPoly2 n) : num(std::move(n)), den(constant2(Int(1))) {}
	RatFunc2(IntPoly2 n, IntPoly2 d);

	bool is_zero() const { return num.is_zero(); }
	bool is_polynomial() const { return den.degree() == 0 && den.lc().degree() == 0; }

	friend bool operator==(const RatFunc2 &a, const RatFunc2 &b)
	{
		return a.num == b.num && a.den == b.den;
	}
	friend RatFunc2 operator+(const RatFunc2 &a, const RatFunc2 &b);
	friend RatFunc2 operator-(const RatFunc2 &a, const RatFunc2 &b);
	friend RatFunc2 operator*(const RatFunc2 &a, const RatFunc2 &b);
	/* Throws DomainError("division by zero") for b = 0. */
	friend RatFunc2 operator/(const RatFunc2 &a, const RatFunc2 &b);
	friend RatFunc2 operator-(const RatFunc2 &a);
};

std::string to_string(const RatFunc2 &f);

} // namespace rcf
