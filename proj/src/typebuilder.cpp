#include "rcf/typebuilder.hpp"
#include "rcf/parse.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>

namespace rcf {

using json = nlohmann::json;

namespace {

constexpr int kTowerVersion = 1;

/* monomials of total degree <= D: degree descending, then x power descending */
std::vector<std::pair<int, int>> monomial_order(int D)
{
	std::vector<std::pair<int, int>> m;
	for (int d = D; d >= 0; d--)
		for (int i = d; i >= 0; i--)
			m.emplace_back(i, d - i);
	return m;
}

int total_deg(const IntPoly2 &p) { return p.is_zero() ? -1 : total_degree(p); }

std::vector<Int> coeff_vector(const IntPoly2 &p)
{
	std::vector<Int> v;
	for (auto [i, j] : monomial_order(std::max(total_deg(p), 0)))
		v.push_back(p[j][i]);
	return v;
}

Int coeff_rank(const Int &c)
{
	if (sgn(c) == 0)
		return Int(-1); /* sorts last, see below */
	return 2 * abs(c) - (sgn(c) > 0 ? 1 : 0);
}

bool rank_less(const Int &a, const Int &b)
{
	Int ra = coeff_rank(a), rb = coeff_rank(b);
	if (ra == rb)
		return false;
	if (ra < 0)
		return false;
	if (rb < 0)
		return true;
	return ra < rb;
}

bool enum_less(const IntPoly2 &a, const IntPoly2 &b)
{
	int da = total_deg(a), db = total_deg(b);
	if (da != db)
		return da < db;
	auto va = coeff_vector(a), vb = coeff_vector(b);
	return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end(), rank_less);
}

IntPoly2 from_coeffs(const std::vector<std::pair<int, int>> &mons, const std::vector<long> &c)
{
	IntPoly2 p;
	for (size_t k = 0; k < mons.size(); k++)
		if (c[k] != 0)
			p += IntPoly2::monomial(IntPoly1::monomial(Int(c[k]), mons[k].first), mons[k].second);
	return p;
}

/* every polynomial of exactly height h, any sign or content, in enum order */
const std::vector<IntPoly2> &polys_of_height(long h)
{
	static std::mutex mu;
	static std::map<long, std::vector<IntPoly2>> cache;
	std::lock_guard<std::mutex> lock(mu);
	auto it = cache.find(h);
	if (it != cache.end())
		return it->second;
	std::vector<IntPoly2> out;
	if (h == 0)
		out.push_back(IntPoly2());
	for (int D = 0; D < h; D++) {
		long s = h - D;
		if (s < 1)
			break;
		auto mons = monomial_order(D);
		std::vector<long> c(mons.size(), 0);
		/* distribute s over the monomials, then choose signs */
		std::function<void(size_t, long)> rec = [&](size_t k, long left) {
			if (k + 1 == mons.size()) {
				c[k] = left;
				bool top = false;
				for (int t = 0; t <= D; t++)
					top = top || c[t] != 0;
				if (!top)
					return;
				std::vector<size_t> nz;
				for (size_t t = 0; t < c.size(); t++)
					if (c[t] != 0)
						nz.push_back(t);
				for (unsigned long mask = 0; mask < (1ul << nz.size()); mask++) {
					std::vector<long> sc = c;
					for (size_t t = 0; t < nz.size(); t++)
						if (mask >> t & 1)
							sc[nz[t]] = -sc[nz[t]];
					out.push_back(from_coeffs(mons, sc));
				}
				return;
			}
			for (long v = 0; v <= left; v++) {
				c[k] = v;
				rec(k + 1, left - v);
			}
			c[k] = 0;
		};
		rec(0, s);
	}
	std::sort(out.begin(), out.end(), enum_less);
	return cache.emplace(h, std::move(out)).first->second;
}

bool enumerable_polynomial(const IntPoly2 &p)
{
	return total_deg(p) >= 1 && int_content(p) == 1 && has_canonical_sign(p);
}

const std::vector<IntPoly2> &enumerable_of_height(long h)
{
	static std::mutex mu;
	static std::map<long, std::vector<IntPoly2>> cache;
	const auto &all = polys_of_height(h);
	std::lock_guard<std::mutex> lock(mu);
	auto it = cache.find(h);
	if (it != cache.end())
		return it->second;
	std::vector<IntPoly2> v;
	for (const auto &p : all)
		if (enumerable_polynomial(p))
			v.push_back(p);
	return cache.emplace(h, std::move(v)).first->second;
}

std::vector<RationalMap2> maps_of_height(long H)
{
	std::vector<RationalMap2> out;
	IntPoly2 X = var_x2(), Y = var_y2();
	for (long a = 0; a <= H; a++)
		for (long b = 1; a + b <= H; b++)
			for (long c = 0; a + b + c <= H; c++) {
				long d = H - a - b - c;
				if (d < 1)
					continue;
				for (const auto &D1 : polys_of_height(a))
					for (const auto &Q1 : polys_of_height(b)) {
						if (leading_sign2(Q1) < 0)
							continue;
						IntPoly2 p1 = D1 + X * Q1;
						RatFunc2 f1(p1, Q1);
						if (!(f1.num == p1 && f1.den == Q1))
							continue;
						for (const auto &D2 : polys_of_height(c))
							for (const auto &Q2 : polys_of_height(d)) {
								if (leading_sign2(Q2) < 0)
									continue;
								IntPoly2 p2 = D2 + Y * Q2;
								RatFunc2 f2(p2, Q2);
								if (!(f2.num == p2 && f2.den == Q2))
									continue;
								out.push_back(RationalMap2{p1, Q1, p2, Q2});
							}
					}
			}
	return out;
}

template <class T, class Gen>
const T &enumerate_at(long i, std::vector<T> &list, long &next_height, Gen gen)
{
	while (static_cast<long>(list.size()) <= i) {
		auto more = gen(next_height++);
		list.insert(list.end(), more.begin(), more.end());
	}
	return list[i];
}

double env_double(const char *name, double dflt)
{
	const char *v = std::getenv(name);
	if (!v || !*v)
		return dflt;
	try {
		return std::stod(v);
	} catch (const std::exception &) {
		throw ParseError(std::string("invalid value for ") + name + ": '" + v + "'");
	}
}

json verdict_json(const LemmaVerdict &v)
{
	json j;
	j["kind"] = to_string(v.kind);
	j["tag"] = to_string(v.tag);
	j["cell"] = to_string(v.cell);
	if (!v.curve.empty())
		j["curve"] = v.curve;
	if (v.witness)
		j["witness"] = to_string(*v.witness);
	if (v.beta)
		j["beta"] = to_string(*v.beta);
	if (v.phi0)
		j["phi0"] = to_string(*v.phi0);
	if (v.phi1)
		j["phi1"] = to_string(*v.phi1);
	if (v.gamma)
		j["gamma"] = to_string(*v.gamma);
	return j;
}

std::string get_string(const json &j, const char *key, const std::string &where)
{
	if (!j.is_object() || !j.contains(key))
		throw ParseError(where + ": missing field '" + key + "'");
	if (!j[key].is_string())
		throw ParseError(where + ": field '" + key + "' must be a string");
	return j[key].get<std::string>();
}

LemmaVerdict verdict_from_json(const json &j, const std::string &where)
{
	LemmaVerdict v;
	v.kind = parse_verdict_kind(get_string(j, "kind", where));
	v.tag = parse_case_tag(get_string(j, "tag", where));
	v.cell = parse_cell(get_string(j, "cell", where));
	if (j.contains("curve"))
		v.curve = get_string(j, "curve", where);
	if (j.contains("witness"))
		v.witness = parse_branch(get_string(j, "witness", where));
	if (j.contains("beta"))
		v.beta = parse_rat(get_string(j, "beta", where));
	if (j.contains("phi0"))
		v.phi0 = parse_branch(get_string(j, "phi0", where));
	if (j.contains("phi1"))
		v.phi1 = parse_branch(get_string(j, "phi1", where));
	if (j.contains("gamma"))
		v.gamma = parse_rat(get_string(j, "gamma", where));
	return v;
}

} // namespace

long poly_height(const IntPoly2 &p)
{
	if (p.is_zero())
		return 0;
	Int s = 0;
	for (const auto &c : p.coeffs())
		for (const auto &a : c.coeffs())
			s += abs(a);
	return total_degree(p) + s.get_si();
}

bool has_canonical_sign(const IntPoly2 &p)
{
	for (const auto &c : coeff_vector(p))
		if (sgn(c) != 0)
			return sgn(c) > 0;
	return false;
}

Int canonical_split(const IntPoly2 &p, IntPoly2 &canonical)
{
	if (p.is_zero())
		throw DomainError("zero polynomial has no canonical form");
	Int c = int_content(p);
	canonical = int_primitive(p);
	if (!(canonical * constant2(c) == p))
		c = -c;
	if (!has_canonical_sign(canonical)) {
		canonical = -canonical;
		c = -c;
	}
	return c;
}

IntPoly2 enum_polynomial(long i)
{
	static std::mutex mu;
	static std::vector<IntPoly2> list;
	static long next = 1;
	std::lock_guard<std::mutex> lock(mu);
	return enumerate_at(i, list, next, enumerable_of_height);
}

long polynomial_index(const IntPoly2 &p)
{
	if (!enumerable_polynomial(p))
		throw DomainError("not an enumerated polynomial: " + to_string(p));
	long h = poly_height(p), before = 0;
	for (long k = 1; k < h; k++)
		before += enumerable_of_height(k).size();
	const auto &v = enumerable_of_height(h);
	auto it = std::find(v.begin(), v.end(), p);
	return before + (it - v.begin());
}

RationalMap2 enum_map(long i)
{
	static std::mutex mu;
	static std::vector<RationalMap2> list;
	static long next = 2;
	std::lock_guard<std::mutex> lock(mu);
	return enumerate_at(i, list, next, maps_of_height);
}

std::string to_string(TowerMode m) { return m == TowerMode::canonical ? "canonical" : "session"; }

bool operator==(const LemmaVerdict &a, const LemmaVerdict &b)
{
	return a.kind == b.kind && a.cell == b.cell && a.tag == b.tag && a.witness == b.witness &&
	       a.curve == b.curve && a.beta == b.beta && a.phi0 == b.phi0 && a.phi1 == b.phi1 &&
	       a.gamma == b.gamma;
}

bool operator==(const Stage &a, const Stage &b)
{
	return a.index == b.index && a.cell == b.cell && a.map == b.map && a.verdict == b.verdict &&
	       a.formula == b.formula && a.sign == b.sign && a.note == b.note;
}

bool operator==(const Tower &a, const Tower &b)
{
	return a.mode == b.mode && a.stages == b.stages && a.decided == b.decided;
}

StageCaps StageCaps::from_env()
{
	StageCaps c;
	c.seconds = env_double("RCF_STAGE_SECONDS", c.seconds);
	c.max_coeff_bits = static_cast<int>(env_double("RCF_MAX_COEFF_BITS", c.max_coeff_bits));
	return c;
}

Tower initial_tower(TowerMode mode)
{
	Tower t;
	t.mode = mode;
	Stage s;
	s.cell = initial_cell();
	t.stages.push_back(s);
	return t;
}

long canonical_count(const Tower &t)
{
	return std::count_if(t.stages.begin(), t.stages.end(), [](const Stage &s) { return s.map.has_value(); });
}

const EndCell &current_cell(const Tower &t)
{
	if (t.stages.empty())
		throw DomainError("tower has no stages");
	return t.stages.back().cell;
}

namespace {

void record_sign(Tower &t, const IntPoly2 &p, int sign)
{
	std::string key = to_string(p);
	auto it = t.decided.find(key);
	if (it != t.decided.end() && it->second != sign)
		throw DomainError("inconsistent sign for " + key);
	t.decided[key] = sign;
}

} // namespace

Tower build_stage(const Tower &t, const StageCaps &caps)
{
	long n = canonical_count(t);
	Tower out = t;
	Stage s;
	s.index = static_cast<long>(t.stages.size());
	EndCell c = current_cell(t);
	RationalMap2 F = enum_map(n);
	s.map = F;
	try {
		BudgetScope budget(caps.seconds, caps.max_coeff_bits);
		LemmaVerdict v = classify(c, F);
		c = v.cell;
		s.verdict = std::move(v);
	} catch (const ResourceError &e) {
		s.note = std::string("map skipped: ") + e.what();
	} catch (const DomainError &e) {
		s.note = std::string("map skipped: ") + e.what();
	}
	IntPoly2 p = enum_polynomial(n);
	Refinement r;
	try {
		BudgetScope budget(caps.seconds, caps.max_coeff_bits);
		r = refine_by_polynomial(c, p);
	} catch (const ResourceError &e) {
		throw ResourceError("stage " + std::to_string(s.index) + ": deciding " + to_string(p) +
		                    ": " + e.what());
	}
	s.formula = p;
	s.sign = r.sign;
	record_sign(out, p, r.sign);
	s.cell = bump_x_bound(r.cell, Rat(s.index));
	out.stages.push_back(std::move(s));
	return out;
}

std::pair<int, Tower> sign_of(const Tower &t, const IntPoly2 &p, const StageCaps &caps)
{
	if (p.is_zero())
		return {0, t};
	IntPoly2 q;
	Int c = canonical_split(p, q);
	if (total_deg(q) == 0)
		return {sgn(c), t};
	std::string key = to_string(q);
	if (auto it = t.decided.find(key); it != t.decided.end())
		return {sgn(c) * it->second, t};
	Tower out = t;
	if (t.mode == TowerMode::canonical) {
		long idx = polynomial_index(q);
		try {
			while (!out.decided.count(key))
				out = build_stage(out, caps);
		} catch (const ResourceError &e) {
			throw ResourceError("canonical sign of " + key + " (enumeration index " +
			                    std::to_string(idx) + "): " + e.what());
		}
		return {sgn(c) * out.decided.at(key), out};
	}
	Stage s;
	s.index = static_cast<long>(t.stages.size());
	Refinement r;
	{
		BudgetScope budget(caps.seconds, caps.max_coeff_bits);
		r = refine_by_polynomial(current_cell(t), q);
	}
	s.formula = q;
	s.sign = r.sign;
	s.cell = bump_x_bound(r.cell, Rat(s.index));
	record_sign(out, q, r.sign);
	out.stages.push_back(std::move(s));
	return {sgn(c) * r.sign, out};
}

std::string save_tower(const Tower &t)
{
	json j;
	j["version"] = kTowerVersion;
	j["mode"] = to_string(t.mode);
	json stages = json::array();
	for (const auto &s : t.stages) {
		json js;
		js["index"] = s.index;
		js["cell"] = to_string(s.cell);
		if (s.map)
			js["map"] = to_string(*s.map);
		if (s.verdict)
			js["verdict"] = verdict_json(*s.verdict);
		if (s.formula)
			js["formula"] = to_string(*s.formula);
		if (s.sign)
			js["sign"] = *s.sign;
		if (!s.note.empty())
			js["note"] = s.note;
		stages.push_back(std::move(js));
	}
	j["stages"] = std::move(stages);
	json d = json::object();
	for (const auto &[k, v] : t.decided)
		d[k] = v;
	j["decided"] = std::move(d);
	return j.dump(2) + "\n";
}

Tower load_tower(std::string_view doc)
{
	json j;
	try {
		j = json::parse(doc);
	} catch (const json::parse_error &e) {
		throw ParseError(std::string("tower document: ") + e.what());
	}
	if (!j.is_object() || !j.contains("version"))
		throw ParseError("tower document: missing field 'version'");
	if (!j["version"].is_number_integer() || j["version"].get<int>() != kTowerVersion)
		throw ParseError("tower document: unsupported version " + j["version"].dump());
	Tower t;
	std::string mode = get_string(j, "mode", "tower document");
	if (mode == "canonical")
		t.mode = TowerMode::canonical;
	else if (mode == "session")
		t.mode = TowerMode::session;
	else
		throw ParseError("tower document: unknown mode '" + mode + "'");
	if (!j.contains("stages") || !j["stages"].is_array())
		throw ParseError("tower document: missing array 'stages'");
	size_t k = 0;
	for (const auto &js : j["stages"]) {
		std::string where = "stage " + std::to_string(k++);
		try {
			Stage s;
			if (!js.contains("index") || !js["index"].is_number_integer())
				throw ParseError("missing integer field 'index'");
			s.index = js["index"].get<long>();
			s.cell = parse_cell(get_string(js, "cell", where));
			if (js.contains("map"))
				s.map = parse_map(get_string(js, "map", where));
			if (js.contains("verdict"))
				s.verdict = verdict_from_json(js["verdict"], where + " verdict");
			if (js.contains("formula"))
				s.formula = parse_poly2(get_string(js, "formula", where));
			if (js.contains("sign")) {
				if (!js["sign"].is_number_integer())
					throw ParseError("field 'sign' must be an integer");
				s.sign = js["sign"].get<int>();
			}
			if (js.contains("note"))
				s.note = get_string(js, "note", where);
			t.stages.push_back(std::move(s));
		} catch (const ParseError &e) {
			std::string m = e.what();
			throw ParseError(m.rfind(where, 0) == 0 ? m : where + ": " + m);
		}
	}
	if (t.stages.empty())
		throw ParseError("tower document: no stages");
	if (!j.contains("decided") || !j["decided"].is_object())
		throw ParseError("tower document: missing object 'decided'");
	for (const auto &[key, v] : j["decided"].items()) {
		if (!v.is_number_integer())
			throw ParseError("tower document: decided sign of '" + key + "' must be an integer");
		t.decided[key] = v.get<int>();
	}
	return t;
}

} // namespace rcf
