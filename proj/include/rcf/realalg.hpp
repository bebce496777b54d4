#pragma once

#include "rcf/upoly.hpp"

#include <compare>
#include <string>
#include <vector>

namespace rcf {

/* A real algebraic number: a square-free primitive integer polynomial
 * (positive leading coefficient) with a rational interval that contains
 * exactly one of its real roots. Either lo == hi and the number is that
 * rational, or lo < hi, the polynomial changes sign strictly across the
 * interval and has no root at either endpoint. Rationals c = n/d are
 * stored as (d*x - n, [c, c]). */
class RealAlg {
public:
	RealAlg() : RealAlg(Rat(0)) {}
	RealAlg(const Rat &q);
	RealAlg(long v) : RealAlg(Rat(v)) {}

	/* Validates that p has exactly one real root in [lo, hi]. */
	static RealAlg from_root(const IntPoly1 &p, const Interval &I);

	/* All real roots of p, left to right. */
	static std::vector<RealAlg> roots(const IntPoly1 &p);

	/* The unique root of p inside enclosure v (p need not be square-free).
	 * v must enclose a root of p. */
	static RealAlg resolve(const IntPoly1 &p, const Approx &v);

	const IntPoly1 &defining() const { return p_; }
	const Rat &lo() const { return I_.lo; }
	const Rat &hi() const { return I_.hi; }
	const Interval &interval() const { return I_; }
	bool is_rational() const { return I_.lo == I_.hi; }
	/* Only when is_rational(). */
	const Rat &rational() const { return I_.lo; }

	/* Copy with interval width at most w. */
	RealAlg refined(const Rat &w) const;
	/* One bisection step. */
	RealAlg bisected() const;

	/* Enclosures of width at most 2^-level. */
	Approx approx() const;

	int sign() const;

	/* alg(<poly>, <lo>, <hi>) */
	std::string str() const;
	/* Rationals in plain form, otherwise str(). */
	std::string display() const;
	/* Decimal approximation for human output only. */
	double to_double() const;

	friend bool same_representation(const RealAlg &a, const RealAlg &b)
	{
		return a.p_ == b.p_ && a.I_.lo == b.I_.lo && a.I_.hi == b.I_.hi;
	}

private:
	RealAlg(IntPoly1 p, Interval I) : p_(std::move(p)), I_(std::move(I)) {}
	static RealAlg make_clean(const IntPoly1 &sqf, Interval I);

	IntPoly1 p_;
	Interval I_;
};

/* Exact sign of q at a. */
int sign_at(const IntPoly1 &q, const RealAlg &a);

std::strong_ordering compare(const RealAlg &a, const RealAlg &b);
std::strong_ordering compare(const RealAlg &a, const Rat &b);

inline bool operator==(const RealAlg &a, const RealAlg &b) { return compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const RealAlg &a, const RealAlg &b) { return compare(a, b); }

enum class AlgOp { add, sub, mul, div, neg, inv };

/* Field operations of k. div and inv throw DomainError("division by zero in
 * k") for a zero divisor. For neg and inv the second operand is ignored. */
RealAlg alg_arith(AlgOp op, const RealAlg &a, const RealAlg &b = RealAlg());

RealAlg operator+(const RealAlg &a, const RealAlg &b);
RealAlg operator-(const RealAlg &a, const RealAlg &b);
RealAlg operator*(const RealAlg &a, const RealAlg &b);
RealAlg operator/(const RealAlg &a, const RealAlg &b);
RealAlg operator-(const RealAlg &a);
RealAlg inverse(const RealAlg &a);

/* num(a) / den(a) for univariate integer polynomials; den(a) != 0. */
RealAlg eval_rational_function(const IntPoly1 &num, const IntPoly1 &den, const RealAlg &a);

/* Parses alg(<poly>, <lo>, <hi>) or a plain rational. */
RealAlg parse_realalg(std::string_view s);

} // namespace rcf
