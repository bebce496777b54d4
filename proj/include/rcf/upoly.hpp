#pragma once

#include "rcf/poly.hpp"

#include <string>
#include <vector>

namespace rcf {

/* Univariate integer polynomial. */
using IntPoly1 = Poly<Int>;
using RatPoly1 = std::vector<Rat>;

Rat eval(const IntPoly1 &p, const Rat &x);
int sign_at(const IntPoly1 &p, const Rat &x);
Interval eval(const IntPoly1 &p, const Interval &x);

/* Primitive integer multiple (positive leading coefficient) of a rational
 * coefficient vector, constant term first. */
IntPoly1 clear_denominators(const RatPoly1 &p);

/* p(x + a) */
IntPoly1 taylor_shift(const IntPoly1 &p, const Int &a);
/* p(c x) */
IntPoly1 scale_var(const IntPoly1 &p, const Int &c);
/* x^deg p * p(1/x) */
IntPoly1 reverse(const IntPoly1 &p);

int sign_variations(const IntPoly1 &p);

/* Descartes bound for the number of roots of p in the open interval (a, b):
 * sign variations of (1+t)^n p((a + b t)/(1 + t)). Exact when 0 or 1. */
int descartes_bound(const IntPoly1 &p, const Rat &a, const Rat &b);

/* Strict upper bound on |root| of p (a power of two). */
Int cauchy_bound(const IntPoly1 &p);

/* Disjoint isolating intervals for the distinct real roots of p, left to
 * right. Point intervals mark exact rational roots; otherwise the square-free
 * part has exactly one root in the open interval and changes sign across
 * it. Throws DomainError for the zero polynomial. */
std::vector<Interval> isolate_real_roots(const IntPoly1 &p);

/* Shrinks I, across which p changes sign strictly with a single root
 * inside, to width at most w (or to the root when it is hit exactly).
 * Newton steps are accepted only when the sign change confirms them. */
Interval refine_root(const IntPoly1 &p, Interval I, const Rat &w);

/* Signed remainder sequence p, p', -rem(...), ..., each primitive up to a
 * positive factor. */
struct SturmChain {
	std::vector<IntPoly1> seq;
};

SturmChain sturm_chain(const IntPoly1 &p);

/* Number of distinct real roots in the half-open interval (a, b]. */
int sturm_count(const SturmChain &c, const Rat &a, const Rat &b);
/* Distinct real roots on the whole line. */
int sturm_count_all(const SturmChain &c);

/* Cheap sufficient test: gcd(p, p') is trivial modulo some prime not
 * dividing lc(p). False means "unknown". */
bool squarefree_mod_p(const IntPoly1 &p);

/* Square-free part, using the modular test as a fast path. */
IntPoly1 sqfree(const IntPoly1 &p);

/* 1 + ceil(max |root|) over the real roots of p; 1 if there are none. The
 * result exceeds every real root in absolute value. */
Int root_magnitude_bound(const IntPoly1 &p);

int max_coeff_bits(const IntPoly1 &p);

std::string to_string(const IntPoly1 &p, char var = 'x');

} // namespace rcf
