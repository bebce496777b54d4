#pragma once

#include "rcf/typebuilder.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace rcf {

/* An element of Q(a, b), written in x, y. Canonical form is the reduced
 * RatFunc2, so equality is syntactic. */
using KElement = RatFunc2;

KElement parse_kelement(std::string_view s);

enum class KOp { add, sub, mul, div };

KElement k_arith(KOp op, const KElement &u, const KElement &v);

/* Sign at the tower's generic point, extending the tower as needed. */
std::pair<int, Tower> k_sign(const Tower &t, const KElement &u);
std::pair<std::strong_ordering, Tower> k_compare(const Tower &t, const KElement &u,
                                                 const KElement &v);

/* A univariate polynomial over Q(a, b), coefficients ascending. */
using KPoly = std::vector<KElement>;

/* Polynomial in z over Q(x, y); x and y stand for a and b. */
KPoly parse_kpoly(std::string_view s);
std::string to_string(const KPoly &p);

/* Distinct real roots in the real closure, by a Sturm chain whose signs are
 * decided on the tower. */
std::pair<int, Tower> count_real_roots_over_K(const Tower &t, const KPoly &p);

/* The index-th real root of poly, bottom to top. */
struct RootElement {
	KPoly poly;
	int index = 0;
};

/* root(<poly in z>, <index>) */
RootElement parse_root(std::string_view s);
std::string to_string(const RootElement &r);

/* Throws DomainError when index is not below the number of real roots. */
std::pair<RootElement, Tower> root_element(const Tower &t, const KPoly &poly, int index);

std::pair<std::strong_ordering, Tower> compare_root(const Tower &t, const RootElement &r,
                                                    const KElement &u);
/* Common roots are detected exactly through the gcd; otherwise bisection
 * on K-valued isolating intervals. Roots closer than any halving of the
 * initial bound reaches (possible since K is non-Archimedean) raise
 * ResourceError after max_steps halvings. */
std::pair<std::strong_ordering, Tower> compare_roots(const Tower &t, const RootElement &r1,
                                                     const RootElement &r2, int max_steps = 60);

/* Roots of p in the half-open interval (lo, hi]. */
std::pair<int, Tower> count_roots_between(const Tower &t, const KPoly &p, const KElement &lo,
                                          const KElement &hi);

/* a and a^m have the same cut over the real algebraic numbers: every
 * integer polynomial of height at most height_cap keeps its eventual sign
 * under x -> x^m, and r -> r(x^m) preserves the order of random pairs of
 * rational functions. */
struct Prop21Report {
	int m = 2;
	int height_cap = 0;
	long polynomials = 0;
	long pairs = 0;
	std::vector<std::string> counterexamples;
	bool pass() const { return counterexamples.empty(); }
};

Prop21Report prop21_check(int m, int height_cap, unsigned seed = 21);

} // namespace rcf
