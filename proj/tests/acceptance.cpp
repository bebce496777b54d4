/* Acceptance run: one PASS/FAIL line per criterion. argv[1] is the CLI
 * binary used by the reproducibility check. */

#include "rcf/fieldk_ab.hpp"
#include "rcf/parse.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <unistd.h>

using namespace rcf;

namespace {

/* pinned limits */
const Rat kRefineWidth = Rat(1, Int("1000000000000000000000000000000"));
constexpr double kLimit1 = 60, kLimit2 = 120, kLimit3 = 60, kLimit4 = 120, kLimit5 = 600,
                 kLimit6 = 120, kLimit7 = 30;

struct Check {
	long failures = 0;
	std::vector<std::string> notes;

	void expect(bool ok, const std::string &what)
	{
		if (!ok) {
			failures++;
			if (notes.size() < 5)
				notes.push_back(what);
		}
	}
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_criterion(int n, const std::string &name, double limit, const std::function<std::string(Check &)> &body)
{
	Check c;
	std::string info;
	auto t0 = std::chrono::steady_clock::now();
	try {
		info = body(c);
	} catch (const std::exception &e) {
		c.failures++;
		c.notes.push_back(std::string("exception: ") + e.what());
	}
	double s = seconds_since(t0);
	if (limit > 0 && s > limit) {
		c.failures++;
		c.notes.push_back("time " + std::to_string(s) + " s over the " + std::to_string(limit) + " s limit");
	}
	bool ok = c.failures == 0;
	std::cout << "criterion " << n << " (" << name << "): " << (ok ? "PASS" : "FAIL") << " [" << info
	          << (info.empty() ? "" : ", ") << s << " s]\n";
	for (const auto &note : c.notes)
		std::cout << "    " << note << "\n";
	std::cout.flush();
	return ok ? 0 : 1;
}

IntPoly1 random_poly1(std::mt19937 &rng, int maxdeg, int maxc)
{
	std::uniform_int_distribution<int> deg(1, maxdeg), coef(-maxc, maxc);
	int d = deg(rng);
	std::vector<Int> v;
	for (int i = 0; i <= d; i++)
		v.push_back(Int(coef(rng)));
	while (sgn(v.back()) == 0)
		v.back() = coef(rng);
	return IntPoly1(v);
}

IntPoly2 random_poly2(std::mt19937 &rng, int maxdeg, int maxc)
{
	std::uniform_int_distribution<int> deg(1, maxdeg), coef(-maxc, maxc);
	int d = deg(rng);
	IntPoly2 p;
	for (int j = 0; j <= d; j++)
		for (int i = 0; i + j <= d; i++)
			p += IntPoly2::monomial(IntPoly1::monomial(Int(coef(rng)), i), j);
	return p;
}

bool nested(const EndCell &inner, const EndCell &outer)
{
	return inner.alpha >= outer.alpha && compare_eventually(outer.lower, inner.lower).ord <= 0 &&
	       compare_eventually(inner.upper, outer.upper).ord <= 0;
}

int degree_of(const RealAlg &a) { return std::max(a.defining().degree(), 1); }

/* sign of q(a) from a refined enclosure; 2 when undecided */
int enclosure_sign(const IntPoly1 &q, const RealAlg &a)
{
	if (a.is_rational())
		return sgn(eval(q, a.rational()));
	Interval v = eval(q, a.refined(kRefineWidth).interval());
	if (sgn(v.lo) > 0)
		return 1;
	if (sgn(v.hi) < 0)
		return -1;
	return 2;
}

std::string criterion1(Check &c)
{
	std::mt19937 rng(1);
	std::vector<RealAlg> vals;
	while (vals.size() < 200) {
		IntPoly1 p = random_poly1(rng, 6, 50);
		auto rs = RealAlg::roots(p);
		if (rs.empty())
			continue;
		vals.push_back(rs[rng() % rs.size()]);
	}
	RealAlg zero(Rat(0)), one(Rat(1));
	long axioms = 0, orders = 0, signs = 0;
	for (size_t i = 0; i < vals.size(); i++) {
		const RealAlg &a = vals[i], &b = vals[(i + 1) % vals.size()];
		c.expect(a + zero == a && a * one == a, "identities");
		c.expect((a + (-a)) == zero, "additive inverse");
		if (a.sign() != 0)
			c.expect(a * inverse(a) == one, "multiplicative inverse");
		if (degree_of(a) * degree_of(b) <= 12) {
			c.expect(a + b == b + a && a * b == b * a, "commutativity");
			axioms++;
		}
		axioms += 4;
	}
	/* associativity, distributivity and order compatibility on triples whose
	 * degree product keeps the resultants small */
	long triples = 0;
	for (size_t i = 0; i < vals.size() && triples < 60; i++)
		for (size_t j = i + 1; j < vals.size() && triples < 60; j++) {
			size_t k = (i + 2 * j + 1) % vals.size();
			const RealAlg &a = vals[i], &b = vals[j], &d = vals[k];
			if (degree_of(a) * degree_of(b) * degree_of(d) > 8 || k == i || k == j)
				continue;
			triples++;
			c.expect((a + b) + d == a + (b + d), "additive associativity");
			c.expect((a * b) * d == a * (b * d), "multiplicative associativity");
			c.expect(a * (b + d) == a * b + a * d, "distributivity");
			auto o = compare(a, b);
			c.expect(compare(a + d, b + d) == o, "order compatible with addition");
			if (d.sign() > 0)
				c.expect(compare(a * d, b * d) == o, "order compatible with positive scaling");
			axioms += 3;
			orders += 2;
		}
	c.expect(triples >= 40, "too few low-degree triples");
	/* total order: trichotomy, antisymmetry, transitivity along a sort */
	std::vector<RealAlg> sorted = vals;
	std::sort(sorted.begin(), sorted.end(), [](const RealAlg &x, const RealAlg &y) { return compare(x, y) < 0; });
	for (size_t i = 0; i + 1 < sorted.size(); i++) {
		auto o = compare(sorted[i], sorted[i + 1]);
		c.expect(o <= 0, "sorted order");
		c.expect(compare(sorted[i + 1], sorted[i]) == (0 <=> o), "antisymmetry");
		c.expect(sorted[i].to_double() <= sorted[i + 1].to_double() + 1e-9, "order against decimals");
		orders++;
	}
	/* sign_at against refinement */
	long undecided = 0;
	for (size_t i = 0; i < vals.size(); i++) {
		const RealAlg &a = vals[i];
		IntPoly1 q = random_poly1(rng, 6, 50);
		int s = sign_at(q, a), e = enclosure_sign(q, a);
		if (e == 2) {
			undecided++;
			c.expect(s == 0 || a.is_rational(), "unresolved enclosure for a nonzero sign");
		} else {
			c.expect(s == e, "sign_at against refinement");
		}
		c.expect(sign_at(a.defining(), a) == 0, "defining polynomial vanishes");
		IntPoly1 shifted = a.defining() * q + IntPoly1::constant(Int(1));
		c.expect(sign_at(shifted, a) == 1, "p*q + 1 is positive at a root of p");
		signs += 3;
	}
	RealAlg r2 = RealAlg::from_root(parse_poly1("x^2 - 2"), Interval(Rat(1), Rat(2)));
	RealAlg r3 = RealAlg::from_root(parse_poly1("x^2 - 3"), Interval(Rat(1), Rat(2)));
	RealAlg s = r2 + r3;
	IntPoly1 q = parse_poly1("x^4 - 10x^2 + 1");
	c.expect(sign_at(q, s) == 0, "sqrt2 + sqrt3 is a root of x^4 - 10x^2 + 1");
	RealAlg s2 = s * s;
	RealAlg v = s2 * s2 - RealAlg(Rat(10)) * s2 + one;
	c.expect(v.is_rational() && sgn(v.rational()) == 0, "x^4 - 10x^2 + 1 evaluates to exactly 0");
	return std::to_string(axioms) + " axiom checks, " + std::to_string(orders) + " order checks, " +
	       std::to_string(signs) + " sign checks";
}

std::string criterion2(Check &c)
{
	std::mt19937 rng(2);
	std::vector<Branch> all;
	long polys = 0, samples = 0;
	while (polys < 100) {
		IntPoly2 p = random_poly2(rng, 4, 5);
		if (p.degree() < 1)
			continue;
		polys++;
		BranchSet bs = branches_at_infinity(p);
		IntPoly2 q = branch_normal_form(p);
		for (int k = 0; k < 20; k++) {
			Rat x0 = bs.bound + 1 + Rat(k * k + k, 3);
			auto rs = RealAlg::roots(at_x(q, x0));
			c.expect(rs.size() == bs.branches.size(), "branch count stable past the bound");
			for (size_t i = 0; i < bs.branches.size() && i < rs.size(); i++) {
				RealAlg v = value_at(bs.branches[i], x0);
				c.expect(v == rs[i], "branch index stable");
				if (i > 0)
					c.expect(compare(value_at(bs.branches[i - 1], x0), v) < 0, "branches never cross");
			}
			samples++;
		}
		for (const auto &b : bs.branches)
			all.push_back(b);
	}
	long pairs = 0;
	for (int k = 0; k < 100 && all.size() > 1; k++) {
		const Branch &a = all[rng() % all.size()], &b = all[rng() % all.size()];
		auto o = compare_eventually(a, b);
		Rat X = o.bound;
		for (const Rat &r : {a.bound, b.bound})
			if (X < r)
				X = r;
		X += 1000000;
		c.expect(compare(value_at(a, X), value_at(b, X)) == o.ord, "compare_eventually at bound + 10^6");
		pairs++;
	}
	return std::to_string(polys) + " polynomials, " + std::to_string(samples) + " sample abscissas, " +
	       std::to_string(pairs) + " pairs";
}

std::string criterion3(Check &c)
{
	std::mt19937 rng(3);
	EndCell c0 = initial_cell();
	long n = 0;
	while (n < 100) {
		IntPoly2 p = random_poly2(rng, 4, 6);
		if (p.is_zero())
			continue;
		n++;
		Refinement r = refine_by_polynomial(c0, p);
		c.expect(r.sign != 0, "nonzero polynomial received sign 0");
		c.expect(is_valid_cell(r.cell), "valid cell");
		c.expect(nested(r.cell, c0), "nesting");
		for (auto [x0, y0] : interior_samples(r.cell, 10, static_cast<unsigned>(n)))
			c.expect(sign_at(at_x(p, x0), y0) == r.sign, "sign at interior sample");
	}
	return std::to_string(n) + " polynomials";
}

std::string criterion4(Check &c)
{
	struct Row {
		const char *map;
		CaseTag tag;
		const char *curve_prefix;
	};
	const Row rows[] = {
		{"map(x, 1, y, 1)", CaseTag::case2_identity, ""},
		{"map(x + 1, 1, y, 1)", CaseTag::case4_tube, "diagonal"},
		{"map(y, 1, x, 1)", CaseTag::case3_escape, ""},
		{"map(x, 1, 1, x)", CaseTag::case1_lowdim, ""},
		{"map(x, 1, x y + 1, x)", CaseTag::case4_tube, ""},
		/* golden values from the first verified run */
		{"map(2x, 1, y, 1)", CaseTag::case4_tube, "diagonal 1"},
		{"map(x^2, 1, y, 1)", CaseTag::case4_tube, "diagonal 1"},
		{"map(x, 1, y, 2)", CaseTag::case4_tube, "midline 1/2"},
	};
	EndCell c0 = initial_cell();
	std::string tags;
	unsigned seed = 40;
	for (const auto &r : rows) {
		RationalMap2 F = parse_map(r.map);
		LemmaVerdict v = classify(c0, F);
		c.expect(v.tag == r.tag, std::string(r.map) + ": got " + to_string(v.tag));
		c.expect(v.curve.rfind(r.curve_prefix, 0) == 0, std::string(r.map) + ": curve " + v.curve);
		c.expect(nested(v.cell, c0), std::string(r.map) + ": nesting");
		c.expect(check_verdict(v, F, 10, seed++), std::string(r.map) + ": 10-sample check");
		if (v.kind == VerdictKind::disjoint)
			for (auto [x0, y0] : interior_samples(v.cell, 10, seed++)) {
				auto img = apply_map(F, x0, y0);
				c.expect(img && !contains(v.cell, RealAlg(img->first), RealAlg(img->second)),
				         std::string(r.map) + ": image meets the cell");
			}
		tags += (tags.empty() ? "" : " ") + to_string(v.tag) + (v.curve.empty() ? "" : "/" + v.curve);
	}
	return tags;
}

Tower g_tower5;

std::string criterion5(Check &c)
{
	Tower t = initial_tower(TowerMode::canonical);
	for (int k = 1; k <= 30; k++) {
		Tower u = build_stage(t);
		const Stage &s = u.stages.back();
		c.expect(s.index == k, "stage index");
		c.expect(s.cell.alpha >= k, "alpha >= stage index at stage " + std::to_string(k));
		c.expect(nested(s.cell, t.stages.back().cell), "nesting at stage " + std::to_string(k));
		c.expect(u.decided.size() == t.decided.size() + 1, "one decision per stage");
		c.expect(s.sign && *s.sign != 0, "nonzero sign");
		t = std::move(u);
	}
	const EndCell &fin = current_cell(t);
	auto pts = interior_samples(fin, 5, 555);
	long decisions = 0, separations = 0, skipped = 0;
	for (const auto &[key, sign] : t.decided) {
		IntPoly2 p = parse_poly2(key);
		for (auto [x0, y0] : pts)
			c.expect(sign_at(at_x(p, x0), y0) == sign, "decided sign of " + key);
		decisions++;
	}
	for (const auto &s : t.stages) {
		if (!s.map)
			continue;
		if (!s.verdict) {
			skipped++;
			std::cout << "    skipped at stage " << s.index << ": " << s.note << "\n";
			continue;
		}
		if (s.verdict->kind != VerdictKind::disjoint)
			continue;
		for (auto [x0, y0] : pts) {
			auto img = apply_map(*s.map, x0, y0);
			c.expect(img && !contains(s.verdict->cell, RealAlg(img->first), RealAlg(img->second)),
			         "separation for " + to_string(*s.map));
		}
		separations++;
	}
	c.expect(load_tower(save_tower(t)) == t, "save/load round trip");
	g_tower5 = t;
	return std::to_string(decisions) + " decisions, " + std::to_string(separations) +
	       " separated maps, " + std::to_string(skipped) + " skipped maps";
}

Tower g_tower6;

KElement random_kelement(std::mt19937 &rng)
{
	auto p = [&] { return random_poly2(rng, 2, 4); };
	IntPoly2 n = p(), d = p();
	while (d.is_zero())
		d = p();
	return KElement(n, d);
}

std::string criterion6(Check &c)
{
	std::mt19937 rng(6);
	Tower t = initial_tower(TowerMode::session);
	for (int k = 0; k < 100; k++) {
		KElement u = random_kelement(rng), v = random_kelement(rng), w = random_kelement(rng);
		auto [su, t1] = k_sign(t, u);
		auto [sv, t2] = k_sign(t1, v);
		auto [suv, t3] = k_sign(t2, u * v);
		c.expect(suv == su * sv, "sign multiplicativity");
		c.expect((su == 0) == u.is_zero(), "sign 0 only for the zero element");
		auto [o1, t4] = k_compare(t3, u, v);
		auto [o2, t5] = k_compare(t4, u + w, v + w);
		c.expect(o1 == o2, "order translation invariance");
		auto [o3, t6] = k_compare(t5, v, w);
		auto [o4, t7] = k_compare(t6, u, w);
		if (o1 < 0 && o3 < 0)
			c.expect(o4 < 0, "transitivity");
		t = std::move(t7);
	}
	for (const char *n : {"x - 10", "x - 1000", "x - 1000000"}) {
		auto [s, t1] = k_sign(t, parse_kelement(n));
		c.expect(s == 1, std::string(n) + " positive");
		t = std::move(t1);
	}
	const std::pair<const char *, int> roots[] = {{"z^2 - x", 2}, {"z^2 + 1", 0}, {"z^2 - y(y - 1)", 0}};
	for (const auto &[p, want] : roots) {
		auto [n, t1] = count_real_roots_over_K(t, parse_kpoly(p));
		c.expect(n == want, std::string(p) + ": " + std::to_string(n) + " roots");
		t = std::move(t1);
	}
	c.expect(load_tower(save_tower(t)) == t, "save/load round trip");
	g_tower6 = t;
	return std::to_string(t.stages.size() - 1) + " session stages";
}

std::string criterion7(Check &c)
{
	std::string info;
	for (int m : {2, 3}) {
		Prop21Report r = prop21_check(m, 5);
		c.expect(r.pass(), "m = " + std::to_string(m) + ": " + std::to_string(r.counterexamples.size()) +
		                      " counterexamples");
		info += (info.empty() ? "" : "; ") + std::string("m=") + std::to_string(m) + ": " +
		        std::to_string(r.polynomials) + " polynomials, " + std::to_string(r.pairs) + " pairs";
	}
	return info;
}

std::string slurp(const std::filesystem::path &p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string criterion8(Check &c, const std::string &cli)
{
	const std::vector<std::string> script = {
		"tower-build --stages 8 --out canon.json --mode canonical",
		"tower-extend --tower canon.json --stages 2",
		"sign --tower canon.json --poly 'x - 3'",
		"tower-build --stages 3 --out sess.json",
		"sign --tower sess.json --poly 'x y - 1'",
		"sign --tower sess.json --poly '1/x - y'",
		"compare --tower sess.json --lhs 'root(z^2 - x, 1)' --rhs 'x'",
		"roots --tower sess.json --poly 'z^3 - x z'",
		"verify --tower canon.json",
		"verify --tower sess.json",
	};
	auto base = std::filesystem::temp_directory_path() / ("rcf_accept_" + std::to_string(::getpid()));
	std::vector<std::filesystem::path> dirs = {base / "run1", base / "run2"};
	for (const auto &d : dirs) {
		std::filesystem::remove_all(d);
		std::filesystem::create_directories(d);
		for (const auto &cmd : script) {
			std::string full = "cd '" + d.string() + "' && '" + cli + "' " + cmd + " >> log.txt 2>&1";
			c.expect(std::system(full.c_str()) == 0, "command failed: " + cmd);
		}
	}
	for (const char *f : {"canon.json", "sess.json"}) {
		std::string a = slurp(dirs[0] / f), b = slurp(dirs[1] / f);
		c.expect(!a.empty() && a == b, std::string(f) + " differs between runs");
		Tower t = load_tower(a);
		c.expect(load_tower(save_tower(t)) == t && save_tower(t) == a, std::string(f) + " round trip");
	}
	c.expect(slurp(dirs[0] / "log.txt") == slurp(dirs[1] / "log.txt"), "command output differs");
	for (const Tower *t : {&g_tower5, &g_tower6})
		if (!t->stages.empty())
			c.expect(load_tower(save_tower(*t)) == *t, "suite tower round trip");
	std::filesystem::remove_all(base);
	return std::to_string(script.size()) + " commands per run";
}

} // namespace

int main(int argc, char **argv)
{
	if (argc < 2) {
		std::cerr << "usage: rcf_acceptance <path to rcf cli>\n";
		return 2;
	}
	std::string cli = std::filesystem::absolute(argv[1]).string();
	int failed = 0;
	failed += run_criterion(1, "real algebraic numbers", kLimit1, criterion1);
	failed += run_criterion(2, "branches at infinity", kLimit2, criterion2);
	failed += run_criterion(3, "end-cell refinement", kLimit3, criterion3);
	failed += run_criterion(4, "map lemma cases", kLimit4, criterion4);
	failed += run_criterion(5, "30-stage canonical tower", kLimit5, criterion5);
	failed += run_criterion(6, "ordered field layer", kLimit6, criterion6);
	failed += run_criterion(7, "same cut of a and a^m", kLimit7, criterion7);
	failed += run_criterion(8, "reproducibility", 0, [&](Check &c) { return criterion8(c, cli); });
	std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
	return failed == 0 ? 0 : 1;
}
