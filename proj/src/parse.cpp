#include "rcf/parse.hpp"

#include <cctype>

namespace rcf {

namespace {

RatFunc2 rat_constant(const Rat &q) { return RatFunc2(constant2(q.get_num()), constant2(q.get_den())); }

struct RatFuncTraits {
	using Value = RatFunc2;
	static bool is_var(int c) { return c == 'x' || c == 'y' || c == 'z'; }
	static Value var(char c) { return RatFunc2(c == 'x' ? var_x2() : var_y2()); }
	static Value constant(const Rat &q) { return rat_constant(q); }
	static bool is_zero(const Value &v) { return v.is_zero(); }
	static bool divisible(const Value &) { return true; }
	static Value div(const Value &a, const Value &b) { return a / b; }
};

/* polynomials in z over Q(x, y), coefficients ascending */
struct ZPoly {
	std::vector<RatFunc2> c;

	void trim()
	{
		while (!c.empty() && c.back().is_zero())
			c.pop_back();
	}
	friend ZPoly operator+(ZPoly a, const ZPoly &b)
	{
		if (a.c.size() < b.c.size())
			a.c.resize(b.c.size());
		for (size_t i = 0; i < b.c.size(); i++)
			a.c[i] = a.c[i] + b.c[i];
		a.trim();
		return a;
	}
	friend ZPoly operator-(const ZPoly &a)
	{
		ZPoly r = a;
		for (auto &v : r.c)
			v = -v;
		return r;
	}
	friend ZPoly operator-(const ZPoly &a, const ZPoly &b) { return a + (-b); }
	friend ZPoly operator*(const ZPoly &a, const ZPoly &b)
	{
		ZPoly r;
		if (a.c.empty() || b.c.empty())
			return r;
		r.c.assign(a.c.size() + b.c.size() - 1, RatFunc2());
		for (size_t i = 0; i < a.c.size(); i++)
			for (size_t j = 0; j < b.c.size(); j++)
				r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
		r.trim();
		return r;
	}
};

struct ZPolyTraits {
	using Value = ZPoly;
	static bool is_var(int c) { return c == 'x' || c == 'y' || c == 'z'; }
	static Value var(char c)
	{
		if (c == 'z')
			return ZPoly{{RatFunc2(), rat_constant(Rat(1))}};
		return ZPoly{{RatFuncTraits::var(c)}};
	}
	static Value constant(const Rat &q)
	{
		ZPoly r{{rat_constant(q)}};
		r.trim();
		return r;
	}
	static bool is_zero(const Value &v) { return v.c.empty(); }
	static bool divisible(const Value &v) { return v.c.size() == 1; }
	static Value div(const Value &a, const Value &b)
	{
		ZPoly r = a;
		for (auto &v : r.c)
			v = v / b.c[0];
		return r;
	}
};

template <class T>
class Parser {
	using V = typename T::Value;

public:
	explicit Parser(std::string_view s) : s_(s) {}

	V run()
	{
		V v = expr();
		skip();
		if (i_ != s_.size())
			fail("unexpected '" + std::string(1, s_[i_]) + "'");
		return v;
	}

private:
	[[noreturn]] void fail(const std::string &what) const
	{
		throw ParseError(what + " at offset " + std::to_string(i_) + " in '" + std::string(s_) +
		                 "'");
	}

	void skip()
	{
		while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
			i_++;
	}

	int peek()
	{
		skip();
		return i_ < s_.size() ? s_[i_] : -1;
	}

	bool starts_primary()
	{
		int c = peek();
		return c == '(' || T::is_var(c) || c == '.' || (c >= 0 && std::isdigit(c));
	}

	V expr()
	{
		V v = term();
		for (;;) {
			int c = peek();
			if (c == '+') {
				i_++;
				v = v + term();
			} else if (c == '-') {
				i_++;
				v = v - term();
			} else {
				return v;
			}
		}
	}

	V term()
	{
		V v = unary();
		for (;;) {
			int c = peek();
			if (c == '*') {
				i_++;
				v = v * unary();
			} else if (c == '/') {
				i_++;
				V d = unary();
				if (T::is_zero(d))
					fail("division by zero");
				if (!T::divisible(d))
					fail("division by an expression in z");
				v = T::div(v, d);
			} else if (starts_primary()) {
				v = v * power();
			} else {
				return v;
			}
		}
	}

	V unary()
	{
		int c = peek();
		if (c == '-') {
			i_++;
			return -unary();
		}
		if (c == '+') {
			i_++;
			return unary();
		}
		return power();
	}

	V power()
	{
		V b = primary();
		if (peek() != '^')
			return b;
		i_++;
		skip();
		size_t st = i_;
		while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
			i_++;
		if (st == i_)
			fail("expected exponent");
		if (i_ - st > 4)
			fail("exponent too large");
		unsigned e = std::stoul(std::string(s_.substr(st, i_ - st)));
		V r = T::constant(Rat(1));
		for (unsigned k = 0; k < e; k++)
			r = r * b;
		return r;
	}

	V primary()
	{
		int c = peek();
		if (c == '(') {
			i_++;
			V v = expr();
			if (peek() != ')')
				fail("expected ')'");
			i_++;
			return v;
		}
		if (T::is_var(c)) {
			i_++;
			return T::var(static_cast<char>(c));
		}
		if (c >= 0 && (std::isdigit(c) || c == '.')) {
			size_t st = i_;
			while (i_ < s_.size() &&
			       (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.'))
				i_++;
			Rat q = parse_rat(s_.substr(st, i_ - st));
			return T::constant(q);
		}
		if (c < 0)
			fail("unexpected end of input");
		fail("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
	}

	std::string_view s_;
	size_t i_ = 0;
};

} // namespace

std::string_view trim(std::string_view s)
{
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
		s.remove_prefix(1);
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
		s.remove_suffix(1);
	return s;
}

RatFunc2 parse_ratfunc(std::string_view s) { return Parser<RatFuncTraits>(s).run(); }

std::vector<RatFunc2> parse_zpoly(std::string_view s) { return Parser<ZPolyTraits>(s).run().c; }

IntPoly2 parse_poly2(std::string_view s)
{
	RatFunc2 f = parse_ratfunc(s);
	if (!f.is_polynomial())
		throw ParseError("expected a polynomial, got '" + std::string(trim(s)) + "'");
	return f.num;
}

IntPoly1 parse_poly1(std::string_view s)
{
	IntPoly2 p = parse_poly2(s);
	if (!is_y_free(p))
		throw ParseError("expected a polynomial in x alone, got '" + std::string(trim(s)) + "'");
	return p.is_zero() ? IntPoly1() : p[0];
}

std::vector<std::string> parse_call(std::string_view s, std::string_view name)
{
	s = trim(s);
	std::string head = std::string(name) + "(";
	if (s.substr(0, head.size()) != head || s.empty() || s.back() != ')')
		throw ParseError("expected " + std::string(name) + "(...), got '" + std::string(s) + "'");
	std::string_view body = s.substr(head.size(), s.size() - head.size() - 1);
	std::vector<std::string> out;
	int depth = 0;
	size_t st = 0;
	for (size_t i = 0; i < body.size(); i++) {
		char c = body[i];
		if (c == '(')
			depth++;
		else if (c == ')')
			depth--;
		else if (c == ',' && depth == 0) {
			out.emplace_back(trim(body.substr(st, i - st)));
			st = i + 1;
		}
		if (depth < 0)
			throw ParseError("unbalanced parentheses in '" + std::string(s) + "'");
	}
	if (depth != 0)
		throw ParseError("unbalanced parentheses in '" + std::string(s) + "'");
	out.emplace_back(trim(body.substr(st)));
	return out;
}

long parse_long(std::string_view s)
{
	s = trim(s);
	try {
		size_t used = 0;
		long v = std::stol(std::string(s), &used);
		if (used == s.size())
			return v;
	} catch (const std::exception &) {
	}
	throw ParseError("expected an integer, got '" + std::string(s) + "'");
}

RealAlg parse_realalg(std::string_view s)
{
	s = trim(s);
	if (s.substr(0, 4) != "alg(")
		return RealAlg(parse_rat(s));
	auto a = parse_call(s, "alg");
	if (a.size() != 3)
		throw ParseError("alg(...) takes three arguments");
	IntPoly1 p = parse_poly1(a[0]);
	return RealAlg::from_root(p, Interval(parse_rat(a[1]), parse_rat(a[2])));
}

} // namespace rcf
