#pragma once

#include "rcf/maplemma.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rcf {

/* Height of a polynomial: total degree plus the sum of the absolute values
 * of its coefficients; 0 for the zero polynomial. */
long poly_height(const IntPoly2 &p);

/* Canonical sign convention: the first nonzero coefficient in the
 * enumeration's monomial order (by total degree descending, then x power
 * descending) is positive. */
bool has_canonical_sign(const IntPoly2 &p);

/* p = c * canonical(p) with canonical(p) primitive, of canonical sign;
 * returns c. p must be nonzero. */
Int canonical_split(const IntPoly2 &p, IntPoly2 &canonical);

/* Nonconstant primitive polynomials of canonical sign, by increasing
 * height; within a height by total degree, then coefficient vectors in
 * monomial order with coefficient rank 1 < -1 < 2 < -2 < ... < 0. */
IntPoly2 enum_polynomial(long i);
/* Position of a nonconstant primitive canonical-sign p in enum_polynomial. */
long polynomial_index(const IntPoly2 &p);

/* Rational maps in lowest terms (positive-leading denominators), by
 * increasing height h(p1 - x q1) + h(q1) + h(p2 - y q2) + h(q2); ties by
 * the four heights lexicographically, then by each component's position in
 * the fixed-height order. The identity comes first. */
RationalMap2 enum_map(long i);

enum class TowerMode { canonical, session };

std::string to_string(TowerMode m);

struct Stage {
	long index = 0;
	EndCell cell;
	std::optional<RationalMap2> map;
	std::optional<LemmaVerdict> verdict;
	std::optional<IntPoly2> formula;
	std::optional<int> sign;
	std::string note;
};

struct Tower {
	TowerMode mode = TowerMode::session;
	std::vector<Stage> stages;
	/* canonical polynomial string -> sign */
	std::map<std::string, int> decided;
};

bool operator==(const LemmaVerdict &a, const LemmaVerdict &b);
bool operator==(const Stage &a, const Stage &b);
bool operator==(const Tower &a, const Tower &b);

/* Caps applied to each stage: RCF_STAGE_SECONDS (default 120) and
 * RCF_MAX_COEFF_BITS (default 20000) from the environment. */
struct StageCaps {
	double seconds = 120;
	int max_coeff_bits = 20000;
	static StageCaps from_env();
};

Tower initial_tower(TowerMode mode);

/* Number of canonical stages (those that consumed an enumerated map). */
long canonical_count(const Tower &t);

/* Appends one canonical stage: classify the next map, refine by the next
 * polynomial, raise alpha past the new stage index. */
Tower build_stage(const Tower &t, const StageCaps &caps = StageCaps::from_env());

/* Sign of p on the tower's generic point, extending the tower as needed. */
std::pair<int, Tower> sign_of(const Tower &t, const IntPoly2 &p,
                              const StageCaps &caps = StageCaps::from_env());

const EndCell &current_cell(const Tower &t);

std::string save_tower(const Tower &t);
Tower load_tower(std::string_view doc);

} // namespace rcf
