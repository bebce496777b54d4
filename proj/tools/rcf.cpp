#include "rcf/fieldk_ab.hpp"
#include "rcf/parse.hpp"

#include <CLI11.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace rcf;

namespace {

std::string read_file(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw ParseError("cannot read tower file '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

Tower load_file(const std::string &path) { return load_tower(read_file(path)); }

/* Exclusive advisory lock on <path>.lock for the lifetime of the object. */
class TowerLock {
public:
	explicit TowerLock(const std::string &path) : path_(path + ".lock")
	{
		fd_ = ::open(path_.c_str(), O_CREAT | O_RDWR, 0644);
		if (fd_ < 0)
			throw std::runtime_error("cannot open lock file '" + path_ + "'");
		if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
			::close(fd_);
			throw std::runtime_error("tower file is locked by another process: '" + path_ + "'");
		}
	}
	~TowerLock()
	{
		::unlink(path_.c_str());
		::flock(fd_, LOCK_UN);
		::close(fd_);
	}
	TowerLock(const TowerLock &) = delete;
	TowerLock &operator=(const TowerLock &) = delete;

private:
	std::string path_;
	int fd_ = -1;
};

/* write-new-then-rename */
void save_file(const std::string &path, const Tower &t)
{
	std::string tmp = path + ".tmp." + std::to_string(::getpid());
	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
		if (!out)
			throw std::runtime_error("cannot write '" + tmp + "'");
		out << save_tower(t);
		out.flush();
		if (!out)
			throw std::runtime_error("write failed for '" + tmp + "'");
	}
	if (std::rename(tmp.c_str(), path.c_str()) != 0) {
		std::remove(tmp.c_str());
		throw std::runtime_error("cannot replace '" + path + "'");
	}
}

std::string sign_string(int s) { return s > 0 ? "+1" : s < 0 ? "-1" : "0"; }

std::string short_tag(const LemmaVerdict &v)
{
	switch (v.tag) {
	case CaseTag::case1_lowdim: return "case1";
	case CaseTag::case2_identity: return "identity";
	case CaseTag::case3_escape: return "case3";
	case CaseTag::case4_tube: return "case4";
	case CaseTag::fix_avoid: return "fixavoid";
	}
	return "?";
}

TowerMode parse_mode(const std::string &m)
{
	if (m == "canonical")
		return TowerMode::canonical;
	if (m == "session")
		return TowerMode::session;
	throw ParseError("unknown mode '" + m + "'");
}

/* Either root(...) or an element of Q(a, b). */
struct Operand {
	std::optional<RootElement> root;
	KElement value;
};

Operand parse_operand(const std::string &s)
{
	if (trim(s).substr(0, 5) == "root(")
		return Operand{parse_root(s), KElement()};
	return Operand{std::nullopt, parse_kelement(s)};
}

std::strong_ordering flip(std::strong_ordering o) { return 0 <=> o; }

std::string order_string(std::strong_ordering o) { return o < 0 ? "<" : o > 0 ? ">" : "="; }

bool nested(const EndCell &inner, const EndCell &outer)
{
	return inner.alpha >= outer.alpha && compare_eventually(outer.lower, inner.lower).ord <= 0 &&
	       compare_eventually(inner.upper, outer.upper).ord <= 0;
}

/* Replays the certificates of a tower; returns the list of failures. */
std::vector<std::string> verify_tower(const Tower &t, int samples)
{
	std::vector<std::string> bad;
	const EndCell &fin = current_cell(t);
	auto pts = interior_samples(fin, samples, 2024);
	for (size_t k = 0; k < t.stages.size(); k++) {
		const Stage &s = t.stages[k];
		std::string at = "stage " + std::to_string(k);
		if (s.index != static_cast<long>(k))
			bad.push_back(at + ": index " + std::to_string(s.index));
		if (!is_valid_cell(s.cell))
			bad.push_back(at + ": invalid cell");
		if (s.cell.alpha < s.index)
			bad.push_back(at + ": alpha below stage index");
		if (k > 0 && !nested(s.cell, t.stages[k - 1].cell))
			bad.push_back(at + ": cell not nested in its predecessor");
		if (s.map && s.verdict) {
			if (!check_verdict(*s.verdict, *s.map, samples, static_cast<unsigned>(k)))
				bad.push_back(at + ": verdict certificate fails");
			if (s.verdict->kind == VerdictKind::disjoint)
				for (auto [x0, y0] : pts) {
					auto img = apply_map(*s.map, x0, y0);
					if (!img || contains(s.cell, RealAlg(img->first), RealAlg(img->second)))
						bad.push_back(at + ": map image meets the cell");
				}
		}
		if (s.formula && s.sign)
			for (auto [x0, y0] : pts)
				if (sign_at(at_x(*s.formula, x0), y0) != *s.sign)
					bad.push_back(at + ": recorded sign of " + to_string(*s.formula) + " fails");
	}
	for (const auto &[key, sign] : t.decided) {
		IntPoly2 p = parse_poly2(key);
		for (auto [x0, y0] : pts)
			if (sign_at(at_x(p, x0), y0) != sign)
				bad.push_back("decided sign of " + key + " fails at a sample");
	}
	return bad;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Exact computations in the real closure of a generic pair over the real algebraic numbers"};
	app.require_subcommand(1);

	std::string out, tower_path, mode = "session", poly, lhs, rhs, cell_arg = "default", map_arg;
	long stages = 0;
	int m = 2, height = 5, samples = 5;

	auto *build = app.add_subcommand("tower-build", "build a fresh tower of canonical stages");
	build->add_option("--stages", stages, "number of canonical stages")->required();
	build->add_option("--out", out, "tower file to write")->required();
	build->add_option("--mode", mode, "canonical or session");

	auto *extend = app.add_subcommand("tower-extend", "append canonical stages to a tower");
	extend->add_option("--tower", tower_path)->required();
	extend->add_option("--stages", stages)->required();

	auto *sign = app.add_subcommand("sign", "sign of an element of Q(a, b) at the generic point");
	sign->add_option("--tower", tower_path)->required();
	sign->add_option("--poly", poly, "polynomial or rational function in x, y")->required();

	auto *compare = app.add_subcommand("compare", "order of two elements");
	compare->add_option("--tower", tower_path)->required();
	compare->add_option("--lhs", lhs)->required();
	compare->add_option("--rhs", rhs)->required();

	auto *classify_cmd = app.add_subcommand("classify", "run the map lemma on a cell");
	classify_cmd->add_option("--cell", cell_arg, "cell(...) or default");
	classify_cmd->add_option("--map", map_arg, "map(p1, q1, p2, q2)")->required();

	auto *roots = app.add_subcommand("roots", "number of real roots of a polynomial in z over Q(a, b)");
	roots->add_option("--tower", tower_path)->required();
	roots->add_option("--poly", poly)->required();

	auto *prop = app.add_subcommand("prop21", "check that a and a^m have the same cut");
	prop->add_option("--m", m);
	prop->add_option("--height", height);

	auto *verify = app.add_subcommand("verify", "replay the certificates stored in a tower file");
	verify->add_option("--tower", tower_path)->required();
	verify->add_option("--samples", samples);

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		std::cout << "ERROR: " << e.what() << "\n";
		return 2;
	}

	try {
		StageCaps caps = StageCaps::from_env();
		if (*build) {
			TowerLock lock(out);
			Tower t = initial_tower(parse_mode(mode));
			for (long k = 0; k < stages; k++) {
				t = build_stage(t, caps);
				const Stage &s = t.stages.back();
				std::cout << "stage " << s.index << ": "
				          << (s.verdict ? to_string(s.verdict->tag) : s.note) << "; "
				          << to_string(*s.formula) << " " << sign_string(*s.sign) << "\n";
			}
			save_file(out, t);
			std::cout << "RESULT: " << t.stages.size() - 1 << " stages\n";
		} else if (*extend) {
			TowerLock lock(tower_path);
			Tower t = load_file(tower_path);
			for (long k = 0; k < stages; k++)
				t = build_stage(t, caps);
			save_file(tower_path, t);
			std::cout << "RESULT: " << t.stages.size() - 1 << " stages\n";
		} else if (*sign) {
			TowerLock lock(tower_path);
			Tower t = load_file(tower_path);
			auto [s, t1] = k_sign(t, parse_kelement(poly));
			if (!(t1 == t))
				save_file(tower_path, t1);
			std::cout << "RESULT: " << sign_string(s) << "\n";
		} else if (*compare) {
			TowerLock lock(tower_path);
			Tower t = load_file(tower_path);
			Operand a = parse_operand(lhs), b = parse_operand(rhs);
			std::pair<std::strong_ordering, Tower> r{std::strong_ordering::equal, t};
			if (a.root && b.root)
				r = compare_roots(t, *a.root, *b.root);
			else if (a.root)
				r = compare_root(t, *a.root, b.value);
			else if (b.root) {
				r = compare_root(t, *b.root, a.value);
				r.first = flip(r.first);
			} else
				r = k_compare(t, a.value, b.value);
			if (!(r.second == t))
				save_file(tower_path, r.second);
			std::cout << "RESULT: " << order_string(r.first) << "\n";
		} else if (*classify_cmd) {
			EndCell c = parse_cell(cell_arg);
			RationalMap2 F = parse_map(map_arg);
			LemmaVerdict v = classify(c, F);
			std::cout << "tag: " << to_string(v.tag) << "\n";
			if (!v.curve.empty())
				std::cout << "curve: " << v.curve << "\n";
			std::cout << "cell: " << to_string(v.cell) << "\n";
			std::cout << "RESULT: " << (v.kind == VerdictKind::identity ? "identity" : "disjoint " + short_tag(v))
			          << "\n";
		} else if (*roots) {
			TowerLock lock(tower_path);
			Tower t = load_file(tower_path);
			auto [n, t1] = count_real_roots_over_K(t, parse_kpoly(poly));
			if (!(t1 == t))
				save_file(tower_path, t1);
			std::cout << "RESULT: " << n << "\n";
		} else if (*prop) {
			Prop21Report rep = prop21_check(m, height);
			std::cout << "polynomials: " << rep.polynomials << "\npairs: " << rep.pairs << "\n";
			for (const auto &c : rep.counterexamples)
				std::cout << "counterexample: " << c << "\n";
			std::cout << "RESULT: " << (rep.pass() ? "pass" : "fail") << "\n";
			return rep.pass() ? 0 : 1;
		} else if (*verify) {
			Tower t = load_file(tower_path);
			auto bad = verify_tower(t, samples);
			for (const auto &b : bad)
				std::cout << "failure: " << b << "\n";
			if (!bad.empty()) {
				std::cout << "ERROR: " << bad.size() << " certificate failures\n";
				return 1;
			}
			std::cout << "RESULT: ok " << t.stages.size() - 1 << " stages\n";
		}
	} catch (const std::exception &e) {
		std::cout << "ERROR: " << e.what() << "\n";
		return 1;
	}
	return 0;
}
