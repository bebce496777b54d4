#include "rcf/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

namespace rcf {

namespace {

thread_local double budget_deadline = 0;
thread_local int budget_bits = 0;

double now_seconds()
{
	return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

} // namespace

BudgetScope::BudgetScope(double seconds, int max_coeff_bits)
    : saved_deadline_(budget_deadline), saved_bits_(budget_bits)
{
	if (seconds > 0) {
		double d = now_seconds() + seconds;
		if (budget_deadline == 0 || d < budget_deadline)
			budget_deadline = d;
	}
	if (max_coeff_bits > 0 && (budget_bits == 0 || max_coeff_bits < budget_bits))
		budget_bits = max_coeff_bits;
}

BudgetScope::~BudgetScope()
{
	budget_deadline = saved_deadline_;
	budget_bits = saved_bits_;
}

void check_budget()
{
	if (budget_deadline != 0 && now_seconds() > budget_deadline)
		throw ResourceError("stage time cap exceeded");
}

void check_coeff_bits(long bits)
{
	if (budget_bits != 0 && bits > budget_bits)
		throw ResourceError("coefficient size cap exceeded (" + std::to_string(bits) + " > " +
		                    std::to_string(budget_bits) + " bits)");
}

std::string to_string(const Int &z) { return z.get_str(); }

std::string to_string(const Rat &q)
{
	if (q.get_den() == 1)
		return q.get_num().get_str();
	return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(std::string_view s)
{
	auto bad = [&] { return ParseError("invalid rational '" + std::string(s) + "'"); };
	if (s.empty())
		throw bad();
	std::string t(s);
	auto slash = t.find('/');
	auto dot = t.find('.');
	auto digits_ok = [](std::string_view d, bool allow_sign) {
		size_t i = 0;
		if (allow_sign && !d.empty() && (d[0] == '-' || d[0] == '+'))
			i = 1;
		if (i >= d.size())
			return false;
		for (; i < d.size(); i++)
			if (!std::isdigit(static_cast<unsigned char>(d[i])))
				return false;
		return true;
	};
	if (slash != std::string::npos) {
		std::string n = t.substr(0, slash), d = t.substr(slash + 1);
		if (!digits_ok(n, true) || !digits_ok(d, false))
			throw bad();
		if (n[0] == '+')
			n.erase(0, 1);
		Int den(d);
		if (den == 0)
			throw ParseError("zero denominator in '" + t + "'");
		Rat q(Int(n), den);
		q.canonicalize();
		return q;
	}
	if (dot != std::string::npos) {
		std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
		bool neg = !ip.empty() && ip[0] == '-';
		if (!ip.empty() && (ip[0] == '-' || ip[0] == '+'))
			ip.erase(0, 1);
		if (ip.empty())
			ip = "0";
		if (!digits_ok(ip, false) || (!fp.empty() && !digits_ok(fp, false)))
			throw bad();
		Int den = int_pow(Int(10), fp.size());
		Rat q(Int(ip + fp), den);
		q.canonicalize();
		return neg ? Rat(-q) : q;
	}
	if (!digits_ok(t, true))
		throw bad();
	if (t[0] == '+')
		t.erase(0, 1);
	return Rat(Int(t));
}

Interval operator*(const Interval &a, const Interval &b)
{
	Rat p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
	return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator/(const Interval &a, const Interval &b)
{
	if (b.contains_zero())
		throw DomainError("interval division by an interval containing zero");
	return a * Interval{1 / b.hi, 1 / b.lo};
}

Approx operator+(Approx a, Approx b)
{
	return Approx([a = std::move(a), b = std::move(b)](unsigned n) {
		return a.at(n) + b.at(n);
	});
}

Approx operator-(Approx a, Approx b)
{
	return Approx([a = std::move(a), b = std::move(b)](unsigned n) {
		return a.at(n) - b.at(n);
	});
}

Approx operator-(Approx a)
{
	return Approx([a = std::move(a)](unsigned n) { return -a.at(n); });
}

Approx operator*(Approx a, Approx b)
{
	return Approx([a = std::move(a), b = std::move(b)](unsigned n) {
		return a.at(n) * b.at(n);
	});
}

Approx operator/(Approx a, Approx b)
{
	return Approx([a = std::move(a), b = std::move(b)](unsigned n) {
		for (unsigned l = n;; l++) {
			Interval d = b.at(l);
			if (!d.contains_zero())
				return a.at(l) / d;
			if (l > n + kMaxApproxLevel)
				throw DomainError("division by an approximation of zero");
		}
	});
}

std::strong_ordering compare_approx(const Approx &a, const Approx &b, unsigned max_level)
{
	for (unsigned l = 0; l <= max_level; l++) {
		Interval x = a.at(l), y = b.at(l);
		if (x.hi < y.lo)
			return std::strong_ordering::less;
		if (y.hi < x.lo)
			return std::strong_ordering::greater;
		if (x.lo == x.hi && y.lo == y.hi && x.lo == y.lo)
			return std::strong_ordering::equal;
	}
	return std::strong_ordering::equal;
}

namespace {

/* Simplest rational in [lo, hi] with 0 <= lo, by continued fractions. */
Rat simplest_nonneg(const Rat &lo, const Rat &hi)
{
	Int fl = floor_rat(lo);
	if (Rat(fl) == lo)
		return lo;
	if (Rat(fl + 1) <= hi)
		return Rat(fl + 1);
	/* fl < lo <= hi < fl + 1 */
	Rat r = simplest_nonneg(1 / (hi - fl), 1 / (lo - fl));
	return Rat(fl) + 1 / r;
}

} // namespace

Rat simplest_between(const Rat &lo, const Rat &hi)
{
	if (sgn(lo) <= 0 && sgn(hi) >= 0)
		return Rat(0);
	if (sgn(lo) > 0)
		return simplest_nonneg(lo, hi);
	return -simplest_nonneg(-hi, -lo);
}

} // namespace rcf
