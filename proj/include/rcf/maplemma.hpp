#pragma once

#include "rcf/endcell.hpp"

#include <optional>
#include <string>
#include <utility>

namespace rcf {

/* F(x, y) = (p1/q1, p2/q2) */
struct RationalMap2 {
	IntPoly2 p1, q1, p2, q2;

	friend bool operator==(const RationalMap2 &a, const RationalMap2 &b)
	{
		return a.p1 == b.p1 && a.q1 == b.q1 && a.p2 == b.p2 && a.q2 == b.q2;
	}
};

/* map(<p1>, <q1>, <p2>, <q2>) */
std::string to_string(const RationalMap2 &F);
RationalMap2 parse_map(std::string_view s);

/* F at a rational point; empty at a pole. */
std::optional<std::pair<Rat, Rat>> apply_map(const RationalMap2 &F, const Rat &x, const Rat &y);

enum class VerdictKind { identity, disjoint };
enum class CaseTag { case1_lowdim, case2_identity, case3_escape, case4_tube, fix_avoid };

std::string to_string(VerdictKind k);
std::string to_string(CaseTag t);
VerdictKind parse_verdict_kind(std::string_view s);
CaseTag parse_case_tag(std::string_view s);

struct LemmaVerdict {
	VerdictKind kind = VerdictKind::identity;
	EndCell cell;
	CaseTag tag = CaseTag::case2_identity;
	/* the curve f of Cases 3 and 4, and how it was chosen */
	std::optional<Branch> witness;
	std::string curve;
	/* Case 3: the first coordinate of F stays below beta <= cell.alpha */
	std::optional<Rat> beta;
	/* Case 4: F maps the cell into {X > gamma, phi0(X) < Y < phi1(X)} */
	std::optional<Branch> phi0, phi1;
	std::optional<Rat> gamma;
};

/* Raised when none of the candidate curves produces a verdict. */
struct CurveSearchExhausted : DomainError {
	using DomainError::DomainError;
};

bool is_identity_map(const RationalMap2 &F);

/* Numerator of the Jacobian determinant of F. */
IntPoly2 jacobian_numerator(const RationalMap2 &F);

/* When the Jacobian vanishes identically, a nonzero polynomial in (x, y)
 * vanishing on the image of F. */
std::optional<IntPoly2> image_dimension_deficient(const RationalMap2 &F);

EndCell avoid_curve(const EndCell &c, const IntPoly2 &curve);

/* q^deg D evaluated: the numerator of D(p1/q1, p2/q2). */
IntPoly2 pullback(const IntPoly2 &D, const RationalMap2 &F);

/* The coordinates of F along the graph of f. */
std::pair<Branch, Branch> mu_nu(const EndCell &c, const Branch &f, const RationalMap2 &F);

/* nu o mu^-1; throws DomainError("Case 3 applies instead") unless mu
 * increases to +infinity. */
Branch pushforward_curve(const Branch &f, const Branch &mu, const Branch &nu);

std::optional<LemmaVerdict> case3_escape(const EndCell &c, const Branch &f, const RationalMap2 &F);
std::optional<LemmaVerdict> case4_tube(const EndCell &c, const Branch &f, const Branch &fstar,
                                       const RationalMap2 &F, const Branch &mu, const Branch &nu);

LemmaVerdict classify(const EndCell &c, const RationalMap2 &F);

/* Exact check at n sample points of v.cell that F(s) lies outside the
 * cell, plus the case-specific containment. */
bool check_verdict(const LemmaVerdict &v, const RationalMap2 &F, int n, unsigned seed);

} // namespace rcf
