// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include "elicit/catalogue.hpp"
#include "elicit/errors.hpp"
#include "elicit/properties.hpp"
#include "elicit/representation.hpp"
#include "elicit/solver.hpp"
#include "elicit/transforms.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace elicit;

namespace {

struct Outcome {
	bool pass = true;
	std::string detail;
};

MeasureSpec named(const std::string &name, double alpha = 0.5) {
	MeasureSpec s;
	s.name = name;
	s.alpha = alpha;
	return s;
}

std::string fmt(double v) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.3g", v);
	return buf;
}

// Bisection on alpha E[(X-z)+] - (1-alpha) E[(z-X)+], decreasing in z.
double expectile_bisection(const WeightedSample &x, double alpha) {
	const auto f = [&](double z) {
		double v = 0.0;
		for (const auto &a : x.atoms()) {
			v += a.weight * (alpha * std::max(a.value - z, 0.0) - (1 - alpha) * std::max(z - a.value, 0.0));
		}
		return v;
	};
	double lo = x.min();
	double hi = x.max();
	while (hi - lo > 1e-12) {
		const double mid = 0.5 * (lo + hi);
		if (mid <= lo || mid >= hi) {
			break;
		}
		(f(mid) > 0 ? lo : hi) = mid;
	}
	return 0.5 * (lo + hi);
}

LambdaSpec random_lambda(std::uint64_t seed, bool nonincreasing) {
	std::mt19937_64 rng(seed * 31 + 5);
	const int n = std::uniform_int_distribution<int>(1, 6)(rng);
	std::uniform_real_distribution<double> z(-6, 6);
	std::uniform_real_distribution<double> level(0.05, 0.95);
	std::vector<double> zs(n);
	std::vector<double> levels(n);
	for (int i = 0; i < n; ++i) {
		zs[i] = z(rng);
		levels[i] = level(rng);
	}
	std::sort(zs.begin(), zs.end());
	if (nonincreasing) {
		std::sort(levels.begin(), levels.end(), std::greater<>());
	}
	LambdaSpec spec;
	for (int i = 0; i < n; ++i) {
		spec.breakpoints.emplace_back(zs[i], levels[i]);
	}
	return spec;
}

// inf{z : F(z) > Lambda(z)}; both sides are right-continuous steps, so the
// infimum is an atom or a breakpoint.
double lambda_scan(const WeightedSample &s, const LambdaSpec &lam) {
	const LevelFunction L(lam);
	std::vector<double> candidates;
	for (const auto &a : s.atoms()) {
		candidates.push_back(a.value);
	}
	for (const auto &bp : lam.breakpoints) {
		candidates.push_back(bp.first);
	}
	std::sort(candidates.begin(), candidates.end());
	for (double c : candidates) {
		if (s.cdf(c) > L(c)) {
			return c;
		}
	}
	return s.max();
}

std::vector<MeasureSpec> convex_catalogue() {
	std::vector<MeasureSpec> specs{named("mean")};
	for (double a : {0.1, 0.5, 0.9, 0.95, 0.99}) {
		specs.push_back(named("var", a));
	}
	for (double a : {0.2, 0.5, 0.8}) {
		specs.push_back(named("expectile", a));
	}
	auto lp = named("lp_quantile", 0.7);
	lp.p = 1.5;
	specs.push_back(lp);
	auto genq = named("genq", 0.3);
	genq.phi1 = PhiSpec{.kind = PhiSpec::Kind::power, .p = 2.0, .beta = 1.0};
	genq.phi2 = PhiSpec{.kind = PhiSpec::Kind::power, .p = 1.5, .beta = 1.0};
	specs.push_back(genq);
	auto lam = named("lambda_var");
	lam.lambda = random_lambda(99, true);
	specs.push_back(lam);
	for (double g : {0.5, 1.0, 2.0}) {
		auto e = named("entropic");
		e.gamma = g;
		specs.push_back(e);
	}
	auto sf = named("shortfall");
	sf.loss = LossSpec{.kind = LossSpec::Kind::piecewise_linear, .a = 2.0, .b = 1.0};
	specs.push_back(sf);
	return specs;
}

Outcome criterion1() {
	double worst = 0.0;
	const auto sc = build(named("mean"));
	for (std::uint64_t seed = 0; seed < 100; ++seed) {
		const auto s = oracles::random_sample(seed);
		double direct = 0.0;
		for (const auto &a : s.atoms()) {
			direct += a.weight * a.value;
		}
		const auto r = solve(sc, s);
		worst = std::max({worst, std::abs(r.lo - direct), std::abs(r.hi - direct)});
	}
	return {worst <= 1e-9, "max |solve - weighted average| = " + fmt(worst) + " over 100 seeds"};
}

Outcome criterion2() {
	int bad = 0;
	int cases = 0;
	for (double alpha : {0.1, 0.5, 0.9, 0.95, 0.99}) {
		const auto sc = build(named("var", alpha));
		for (std::uint64_t seed = 0; seed < 100; ++seed) {
			const auto s = seed % 2 ? oracles::random_sample(seed) : oracles::lattice_sample(seed);
			const double q = oracles::quantile_by_enumeration(s, alpha);
			const auto r = solve(sc, s);
			const double rep = rho_from_representation(sc, s, Side::minus);
			++cases;
			if (!(r.lo <= q && q <= r.hi) || rep != q) {
				++bad;
			}
		}
	}
	return {bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases) +
	                      " cases: solve brackets the quantile and the minus endpoint equals it exactly"};
}

Outcome criterion3() {
	double worst = 0.0;
	double worst_mean = 0.0;
	for (double alpha : {0.2, 0.5, 0.8}) {
		const auto sc = build(named("expectile", alpha));
		for (std::uint64_t seed = 0; seed < 100; ++seed) {
			const auto s = oracles::random_sample(seed);
			const auto r = solve(sc, s);
			const double ref = expectile_bisection(s, alpha);
			worst = std::max({worst, std::abs(r.lo - ref), std::abs(r.hi - ref)});
			if (alpha == 0.5) {
				worst_mean = std::max({worst_mean, std::abs(r.lo - s.mean()), std::abs(r.hi - s.mean())});
			}
		}
	}
	return {worst <= 1e-6 && worst_mean <= 1e-8,
	        "max |solve - bisection| = " + fmt(worst) + ", alpha 0.5 max |solve - mean| = " + fmt(worst_mean)};
}

Outcome criterion4() {
	double worst_osband = 0.0;
	double worst_shortfall = 0.0;
	for (double gamma : {0.5, 1.0, 2.0}) {
		auto osband = named("mean");
		osband.transform = TransformSpec{.kind = TransformSpec::Kind::exp, .gamma = gamma};
		osband.osband = TransformSpec{.kind = TransformSpec::Kind::log_scaled, .gamma = gamma};
		auto shortfall = named("entropic");
		shortfall.gamma = gamma;
		const auto sc = build(shortfall);
		for (std::uint64_t seed = 0; seed < 50; ++seed) {
			const auto s = oracles::random_sample(seed);
			const double ref = oracles::entropic_closed_form(s, gamma);
			const auto a = elicit::elicit(osband, s);
			const auto b = solve(sc, s);
			worst_osband = std::max({worst_osband, std::abs(a.lo - ref), std::abs(a.hi - ref)});
			worst_shortfall = std::max({worst_shortfall, std::abs(b.lo - ref), std::abs(b.hi - ref)});
		}
	}
	return {worst_osband <= 1e-8 && worst_shortfall <= 1e-6,
	        "Osband max diff " + fmt(worst_osband) + ", shortfall score max diff " + fmt(worst_shortfall)};
}

Outcome criterion5() {
	int bad = 0;
	int cases = 0;
	for (std::uint64_t k = 0; k < 20; ++k) {
		auto spec = named("lambda_var");
		spec.lambda = random_lambda(k, k % 2 == 0);
		const auto sc = build(spec);
		for (std::uint64_t seed = 0; seed < 50; ++seed) {
			const auto s = seed % 2 ? oracles::random_sample(seed, 5, 30) : oracles::lattice_sample(seed);
			++cases;
			if (rho_from_representation(sc, s, Side::plus) != lambda_scan(s, spec.lambda)) {
				++bad;
			}
		}
	}
	return {bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases) + " plus endpoints equal the direct scan"};
}

Outcome criterion6() {
	double worst_rho = 0.0;
	std::string worst_rho_spec;
	long bound_checks = 0;
	long bound_violations = 0;
	long violations_past_rho = 0;
	std::string first_violation;
	double worst_var_g = 0.0;
	for (const auto &spec : convex_catalogue()) {
		const auto sc = build(spec);
		const bool is_var = spec.name == "var";
		for (std::uint64_t seed = 0; seed < 100; ++seed) {
			const auto s = oracles::random_sample(seed);
			const auto r = solve(sc, s);
			const double rho_minus = rho_from_representation(sc, s, Side::minus);
			const double d = std::max(std::abs(rho_minus - r.lo),
			                          std::abs(rho_from_representation(sc, s, Side::plus) - r.hi));
			if (d > worst_rho) {
				worst_rho = d;
				worst_rho_spec = describe(spec);
			}
			for (double z : representation_grid(sc, s)) {
				const auto gp = g_plus(sc, s, z);
				const auto gm = g_minus(sc, s, z);
				if (gp) {
					const double v = (1 - s.cdf(z)) * *gp;
					++bound_checks;
					if (!(v > 0 && v <= 1)) {
						violations_past_rho += z >= rho_minus + 1e-9 ? 1 : 0;
						if (bound_violations++ == 0) {
							first_violation = describe(spec) + " seed " + std::to_string(seed) + " z=" + fmt(z) +
							                  ": (1-F)G+ = " + fmt(v);
						}
					}
					if (is_var && std::isfinite(*gp)) {
						const double odds = spec.alpha / (1 - spec.alpha);
						worst_var_g = std::max(worst_var_g, std::abs(*gp - odds) / odds);
					}
				}
				if (gm) {
					const double v = (1 - s.cdf_left(z)) * *gm;
					++bound_checks;
					if (!(v >= 0 && v < 1)) {
						violations_past_rho += z >= rho_minus + 1e-9 ? 1 : 0;
						if (bound_violations++ == 0) {
							first_violation = describe(spec) + " seed " + std::to_string(seed) + " z=" + fmt(z) +
							                  ": (1-F)G- = " + fmt(v);
						}
					}
				}
			}
		}
	}
	std::string detail = "max |rho - solve| = " + fmt(worst_rho);
	if (!worst_rho_spec.empty()) {
		detail += " (" + worst_rho_spec + ")";
	}
	detail += "; VaR G+ max rel. dev from alpha/(1-alpha) = " + fmt(worst_var_g);
	detail += "; G-bound violations " + std::to_string(bound_violations) + "/" + std::to_string(bound_checks);
	if (bound_violations > 0) {
		detail += " (" + std::to_string(violations_past_rho) + " at z > rho-), first: " + first_violation;
	}
	return {worst_rho <= 1e-6 && worst_var_g <= 1e-12 && bound_violations == 0, detail};
}

Outcome criterion7() {
	const auto specs = convex_catalogue();
	int instances = 0;
	int foc_fail = 0;
	int hull_fail = 0;
	double worst = 0.0;
	for (int i = 0; instances < 1000; ++i) {
		const auto &spec = specs[i % specs.size()];
		const auto sc = build(spec);
		const auto s = i % 3 == 0 ? oracles::lattice_sample(i) : oracles::random_sample(i);
		const auto r = solve(sc, s);
		for (double z : {r.lo, r.hi}) {
			const auto f = foc_check(sc, s, z, 1e-6);
			worst = std::max(worst, f.residual);
			if (!f.satisfied || f.residual > 1e-6) {
				++foc_fail;
			}
		}
		if (r.lo < s.min() || r.hi > s.max() || r.lo > r.hi) {
			++hull_fail;
		}
		++instances;
	}
	// rho[0] = 0: the point mass at zero.
	int zero_fail = 0;
	for (const auto &spec : specs) {
		const auto r = solve(build(spec), WeightedSample::point_mass(0.0));
		if (r.lo != 0.0 || r.hi != 0.0) {
			++zero_fail;
		}
	}
	return {foc_fail == 0 && hull_fail == 0 && zero_fail == 0,
	        std::to_string(instances) + " instances, foc failures " + std::to_string(foc_fail) + " (max residual " +
	            fmt(worst) + "), hull violations " + std::to_string(hull_fail) + ", rho[0] != 0 for " +
	            std::to_string(zero_fail) + " specs"};
}

Outcome criterion8() {
	struct Case {
		MeasureSpec spec;
		Property property;
		Family family;
		bool expect_counterexample;
	};
	std::vector<Case> cases;
	for (auto p : {Property::monotonicity, Property::translation_invariance, Property::positive_homogeneity}) {
		cases.push_back({named("var", 0.9), p, Family::random, false});
	}
	for (double a : {0.5, 0.75, 0.9}) {
		for (auto p : {Property::monotonicity, Property::translation_invariance, Property::positive_homogeneity,
		               Property::convexity}) {
			cases.push_back({named("expectile", a), p, Family::random, false});
		}
	}
	for (auto p : {Property::monotonicity, Property::translation_invariance, Property::convexity}) {
		cases.push_back({named("entropic"), p, Family::random, false});
	}
	cases.push_back({named("var", 0.9), Property::convexity, Family::two_atom, true});

	int bad = 0;
	std::string first;
	for (const auto &c : cases) {
		const auto r = check_property(c.spec, c.property, 1000, 2024, 1e-7, c.family);
		if (r.counterexample() != c.expect_counterexample) {
			if (bad++ == 0) {
				first = describe(c.spec) + " " + std::string(to_string(c.property)) + ": " + std::string(r.verdict());
			}
		}
	}
	std::string detail = std::to_string(cases.size() - bad) + "/" + std::to_string(cases.size()) +
	                     " property verdicts as expected (1000 trials each)";
	if (bad > 0) {
		detail += ", first mismatch: " + first;
	}
	return {bad == 0, detail};
}

Outcome criterion9() {
	MeasureSpec mv;
	auto second = named("mean");
	second.transform = TransformSpec{.kind = TransformSpec::Kind::power, .k = 2};
	mv.joint = {named("mean"), second};
	mv.joint_map = JointMapSpec{.kind = JointMapSpec::Kind::mean_variance};
	double worst = 0.0;
	for (std::uint64_t seed = 0; seed < 100; ++seed) {
		const auto s = oracles::random_sample(seed);
		double m1 = 0.0;
		double m2 = 0.0;
		for (const auto &a : s.atoms()) {
			m1 += a.weight * a.value;
		}
		for (const auto &a : s.atoms()) {
			m2 += a.weight * (a.value - m1) * (a.value - m1);
		}
		const auto v = elicit_joint(mv, s).values;
		worst = std::max({worst, std::abs(v[0] - m1), std::abs(v[1] - m2)});
	}
	const std::vector<double> levels{0.1, 0.25, 0.5, 0.75, 0.9};
	MeasureSpec jq;
	for (double a : levels) {
		jq.joint.push_back(named("var", a));
	}
	int quantile_bad = 0;
	for (std::uint64_t seed = 0; seed < 100; ++seed) {
		const auto s = seed % 2 ? oracles::random_sample(seed) : oracles::lattice_sample(seed);
		const auto v = elicit_joint(jq, s).values;
		for (std::size_t i = 0; i < levels.size(); ++i) {
			if (v[i] != oracles::quantile_by_enumeration(s, levels[i])) {
				++quantile_bad;
			}
		}
	}
	return {worst <= 1e-8 && quantile_bad == 0,
	        "mean-variance max diff " + fmt(worst) + ", joint quantile mismatches " + std::to_string(quantile_bad)};
}

std::string slurp(const std::filesystem::path &p) {
	std::ifstream in(p, std::ios::binary);
	return {std::istreambuf_iterator<char>(in), {}};
}

Outcome criterion10() {
	namespace fs = std::filesystem;
	const auto dir = fs::temp_directory_path() / ("elicit_acceptance_" + std::to_string(std::random_device{}()));
	fs::create_directories(dir);
	const auto write = [&](const std::string &name, const std::string &text) {
		std::ofstream(dir / name) << text;
		return (dir / name).string();
	};
	std::ostringstream data;
	data.precision(17);
	data << "value,weight,fa,fb\n";
	const auto s = oracles::random_sample(7);
	for (const auto &a : s.atoms()) {
		data << a.value << ',' << a.weight << ',' << a.value * 0.5 << ",0\n";
	}
	const auto csv = write("data.csv", data.str());
	const auto var = write("var.json", R"({"name": "var", "alpha": 0.9})");
	const auto ent = write("ent.json", R"({"name": "entropic", "gamma": 1.5})");
	const auto exp = write("exp.json", R"({"name": "expectile", "alpha": 0.8})");
	const std::vector<std::string> commands{
	    "compute --data " + csv + " --weight-column weight --spec " + ent,
	    "compute --data " + csv + " --spec " + var,
	    "represent --data " + csv + " --spec " + exp,
	    "properties --spec " + exp + " --trials 200 --seed 17",
	    "compare --data " + csv + " --forecast-a fa --forecast-b fb --spec " + var,
	};
	int bad = 0;
	for (std::size_t i = 0; i < commands.size(); ++i) {
		std::string outputs[2];
		for (int k = 0; k < 2; ++k) {
			const auto out = dir / ("out" + std::to_string(i) + "_" + std::to_string(k) + ".json");
			const std::string cmd = std::string(ELICIT_BINARY) + " " + commands[i] + " --out " + out.string();
			if (std::system(cmd.c_str()) != 0) {
				++bad;
			}
			outputs[k] = slurp(out);
		}
		if (outputs[0].empty() || outputs[0] != outputs[1]) {
			++bad;
		}
	}
	fs::remove_all(dir);
	return {bad == 0, std::to_string(commands.size()) + " CLI commands run twice, " + std::to_string(bad) + " mismatches"};
}

} // namespace

int main() {
	const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
	                                                      criterion6, criterion7, criterion8, criterion9, criterion10};
	const auto start = std::chrono::steady_clock::now();
	int failed = 0;
	for (std::size_t i = 0; i < criteria.size(); ++i) {
		Outcome o;
		try {
			o = criteria[i]();
		} catch (const std::exception &e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		failed += o.pass ? 0 : 1;
		std::printf("Criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
		std::fflush(stdout);
	}
	const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), seconds);
	return failed == 0 ? 0 : 1;
}
