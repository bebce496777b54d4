#pragma once

#include <gmpxx.h>

#include <compare>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rcf {

using Int = mpz_class;
using Rat = mpq_class;

/* Raised for malformed textual input. */
struct ParseError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Raised when a computation exceeds a configured time or size cap. */
struct ResourceError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Raised when an operation's mathematical precondition does not hold. */
struct DomainError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Per-thread work caps. Active while a BudgetScope lives; check_budget()
 * throws ResourceError past the deadline, check_coeff_bits() past the
 * size cap. Zero means no cap. */
class BudgetScope {
public:
	BudgetScope(double seconds, int max_coeff_bits);
	~BudgetScope();
	BudgetScope(const BudgetScope &) = delete;
	BudgetScope &operator=(const BudgetScope &) = delete;

private:
	double saved_deadline_;
	int saved_bits_;
};

void check_budget();
void check_coeff_bits(long bits);

inline bool is_zero(const Int &a) { return sgn(a) == 0; }
inline int lead_sign(const Int &a) { return sgn(a); }

inline Int exact_div(const Int &a, const Int &b)
{
	Int q;
	mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
	return q;
}

inline Int ring_gcd(const Int &a, const Int &b)
{
	Int g;
	mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
	return g;
}

inline Int int_pow(const Int &b, unsigned long e)
{
	Int r;
	mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
	return r;
}

inline Int floor_rat(const Rat &q)
{
	Int r;
	mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
	return r;
}

inline Int ceil_rat(const Rat &q)
{
	Int r;
	mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
	return r;
}

inline int sign_of(const Rat &q) { return sgn(q); }

inline std::strong_ordering to_ordering(int c)
{
	return c < 0 ? std::strong_ordering::less
	     : c > 0 ? std::strong_ordering::greater
	             : std::strong_ordering::equal;
}

inline int from_ordering(std::strong_ordering o)
{
	return o < 0 ? -1 : o > 0 ? 1 : 0;
}

inline char ordering_char(std::strong_ordering o)
{
	return o < 0 ? '<' : o > 0 ? '>' : '=';
}

/* "n" or "n/d" in lowest terms. */
std::string to_string(const Rat &q);
std::string to_string(const Int &z);

/* Accepts "n", "-n", "n/d" and finite decimals "1.25". */
Rat parse_rat(std::string_view s);

/* Closed interval with rational endpoints. */
struct Interval {
	Rat lo, hi;

	Interval() = default;
	explicit Interval(const Rat &v) : lo(v), hi(v) {}
	Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}

	Rat width() const { return hi - lo; }
	Rat mid() const { return (lo + hi) / 2; }
	bool contains(const Rat &v) const { return lo <= v && v <= hi; }
	bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }

	friend bool disjoint(const Interval &a, const Interval &b)
	{
		return a.hi < b.lo || b.hi < a.lo;
	}

	friend Interval hull(const Interval &a, const Interval &b)
	{
		return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
	}

	friend Interval operator+(const Interval &a, const Interval &b)
	{
		return {a.lo + b.lo, a.hi + b.hi};
	}
	friend Interval operator-(const Interval &a, const Interval &b)
	{
		return {a.lo - b.hi, a.hi - b.lo};
	}
	friend Interval operator-(const Interval &a) { return {-a.hi, -a.lo}; }
	friend Interval operator*(const Interval &a, const Interval &b);
	/* b must not contain zero. */
	friend Interval operator/(const Interval &a, const Interval &b);
	friend Interval operator*(const Rat &s, const Interval &a)
	{
		return sgn(s) >= 0 ? Interval{s * a.lo, s * a.hi}
		                   : Interval{s * a.hi, s * a.lo};
	}
};

/* A real number given by a family of shrinking rational enclosures. The
 * enclosure at level n contains the value, and widths tend to zero as n
 * grows. */
class Approx {
public:
	using Fn = std::function<Interval(unsigned)>;

	Approx() : fn_([](unsigned) { return Interval(Rat(0)); }) {}
	explicit Approx(Fn f) : fn_(std::move(f)) {}
	static Approx exact(Rat v)
	{
		return Approx([v = std::move(v)](unsigned) { return Interval(v); });
	}

	Interval at(unsigned level) const { return fn_(level); }

	friend Approx operator+(Approx a, Approx b);
	friend Approx operator-(Approx a, Approx b);
	friend Approx operator*(Approx a, Approx b);
	/* Only meaningful when b is nonzero; low levels may widen. */
	friend Approx operator/(Approx a, Approx b);
	friend Approx operator-(Approx a);

private:
	Fn fn_;
};

/* Levels tried before concluding that two enclosures will never separate. */
inline constexpr unsigned kMaxApproxLevel = 200;

/* Decides a < b, a > b by refining until the enclosures are disjoint.
 * Returns equal only if they stay overlapping up to max_level. */
std::strong_ordering compare_approx(const Approx &a, const Approx &b,
                                    unsigned max_level = kMaxApproxLevel);

/* Simplest rational (smallest denominator, then numerator magnitude) in
 * the closed interval [lo, hi]. */
Rat simplest_between(const Rat &lo, const Rat &hi);

} // namespace rcf
