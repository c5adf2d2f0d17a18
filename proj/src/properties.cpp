#include "elicit/properties.hpp"

#include "elicit/catalogue.hpp"
#include "elicit/errors.hpp"
#include "elicit/solver.hpp"
#include "elicit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace elicit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
	x += 0x9E3779B97F4A7C15ULL;
	x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
	x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
	return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
	return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1));
}

struct Instance {
	std::vector<PairedAtom> atoms;
	double parameter = 0.0;
};

Instance generate(Property property, Family family, std::uint64_t seed) {
	std::mt19937_64 rng(seed);
	std::uniform_real_distribution<double> value(-10.0, 10.0);
	std::exponential_distribution<double> weight(1.0);
	std::normal_distribution<double> noise(0.0, 1.0);

	Instance inst;
	if (family == Family::two_atom) {
		std::uniform_real_distribution<double> prob(0.0, 0.5);
		std::uniform_real_distribution<double> size(0.0, 10.0);
		double p = prob(rng);
		while (p <= 0.0) {
			p = prob(rng);
		}
		const double a = 10.0 - size(rng); // (0, 10]
		const double b = 10.0 - size(rng);
		inst.atoms = {{a, 0.0, p}, {0.0, b, p}, {0.0, 0.0, 1.0 - 2.0 * p}};
	} else {
		const int n = std::uniform_int_distribution<int>(3, 30)(rng);
		for (int i = 0; i < n; ++i) {
			const double x = value(rng);
			const double w = std::max(weight(rng), 1e-300);
			inst.atoms.push_back({x, x, w});
		}
		if (property == Property::convexity) {
			for (auto &a : inst.atoms) {
				a.y = value(rng);
			}
		}
	}

	switch (property) {
	case Property::monotonicity:
		for (auto &a : inst.atoms) {
			a.y = a.x + std::abs(noise(rng));
		}
		break;
	case Property::translation_invariance:
		inst.parameter = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
		break;
	case Property::positive_homogeneity:
		inst.parameter = std::uniform_real_distribution<double>(0.0, 4.0)(rng);
		break;
	case Property::convexity:
		inst.parameter = family == Family::two_atom ? 0.5 : std::uniform_real_distribution<double>(0.0, 1.0)(rng);
		break;
	case Property::star_shaped:
		inst.parameter = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
		break;
	}
	if (property != Property::convexity && property != Property::monotonicity) {
		for (auto &a : inst.atoms) {
			a.y = a.x;
		}
	}
	return inst;
}

struct Interval {
	double lo;
	double hi;
};

class Evaluator {
public:
	explicit Evaluator(const MeasureSpec &spec) : spec_(spec), score_(build(spec)) {}

	// Throws NumericalError / DomainError on solver trouble.
	Interval operator()(const WeightedSample &s) const {
		const auto r = elicit(spec_, s);
		return {r.lo, r.hi};
	}

	// Kink of z -> E[S(z, X)] at the lower endpoint of the base problem.
	bool kinked(const WeightedSample &s) const {
		const auto base = spec_.transform ? s.transform(as_function(*spec_.transform)) : s;
		const auto r = solve(score_, base, spec_.solver);
		const auto d = expected_slope(score_, base, r.lo);
		return std::abs(d.right - d.left) > 1e-9 * (1.0 + std::abs(d.left) + std::abs(d.right));
	}

private:
	const MeasureSpec &spec_;
	MultiplicativeScore score_;
};

TrialOutcome run_trial(const Evaluator &rho, Property property, Family family, int trial, std::uint64_t seed,
                       double tol, bool *kinked) {
	const auto inst = generate(property, family, seed);
	const auto paired = PairedSample::from_atoms(inst.atoms);
	const auto X = paired.marginal_x();
	const double par = inst.parameter;

	TrialOutcome out;
	const auto record = [&](const char *side, double lhs, double rhs, double gap) {
		PropertyFailure f;
		f.trial = trial;
		f.seed = seed;
		f.side = side;
		f.parameter = par;
		f.instance = inst.atoms;
		f.lhs = lhs;
		f.rhs = rhs;
		f.gap = gap;
		out.failures.push_back(std::move(f));
	};
	const auto singleton = [&](const Interval &r) { return r.hi - r.lo <= tol; };

	try {
		if (kinked) {
			*kinked = rho.kinked(X);
		}
		const auto rx = rho(X);
		switch (property) {
		case Property::monotonicity: {
			const auto ry = rho(paired.marginal_y());
			if (rx.lo > ry.lo + tol) {
				record("lo", rx.lo, ry.lo, rx.lo - ry.lo);
			}
			if (rx.hi > ry.hi + tol) {
				record("hi", rx.hi, ry.hi, rx.hi - ry.hi);
			}
			break;
		}
		case Property::translation_invariance: {
			const auto rs = rho(X.shifted(par));
			if (std::abs(rs.lo - (rx.lo + par)) > tol) {
				record("lo", rs.lo, rx.lo + par, std::abs(rs.lo - (rx.lo + par)));
			}
			if (std::abs(rs.hi - (rx.hi + par)) > tol) {
				record("hi", rs.hi, rx.hi + par, std::abs(rs.hi - (rx.hi + par)));
			}
			break;
		}
		case Property::positive_homogeneity: {
			const auto rs = rho(X.scaled(par));
			const double bound = tol * (1.0 + par);
			if (std::abs(rs.lo - par * rx.lo) > bound) {
				record("lo", rs.lo, par * rx.lo, std::abs(rs.lo - par * rx.lo));
			}
			if (std::abs(rs.hi - par * rx.hi) > bound) {
				record("hi", rs.hi, par * rx.hi, std::abs(rs.hi - par * rx.hi));
			}
			break;
		}
		case Property::convexity: {
			const auto ry = rho(paired.marginal_y());
			const auto rm = rho(paired.mix(par));
			if (!singleton(rx) || !singleton(ry) || !singleton(rm)) {
				out.status = TrialStatus::inconclusive;
				return out;
			}
			const double rhs = par * rx.lo + (1.0 - par) * ry.lo;
			if (rm.lo > rhs + tol) {
				record("lo", rm.lo, rhs, rm.lo - rhs);
			}
			break;
		}
		case Property::star_shaped: {
			const auto rs = rho(X.scaled(par));
			if (!singleton(rx) || !singleton(rs)) {
				out.status = TrialStatus::inconclusive;
				return out;
			}
			if (rs.lo > par * rx.lo + tol) {
				record("lo", rs.lo, par * rx.lo, rs.lo - par * rx.lo);
			}
			break;
		}
		}
	} catch (const NumericalError &) {
		out.status = TrialStatus::inconclusive;
		out.failures.clear();
		return out;
	} catch (const DomainError &) {
		out.status = TrialStatus::inconclusive;
		out.failures.clear();
		return out;
	}
	out.status = out.failures.empty() ? TrialStatus::passed : TrialStatus::failed;
	return out;
}

void check_args(int trials, double tol) {
	if (trials < 1) {
		throw InputError("trials must be >= 1");
	}
	if (!(tol > 0.0) || !std::isfinite(tol)) {
		throw InputError("tolerance must be a positive finite number");
	}
}

std::string fmt(const char *label, double v) {
	char buf[96];
	std::snprintf(buf, sizeof buf, "%s=%.17g", label, v);
	return buf;
}

} // namespace

std::string_view to_string(Property p) noexcept {
	switch (p) {
	case Property::monotonicity:
		return "monotonicity";
	case Property::translation_invariance:
		return "translation_invariance";
	case Property::positive_homogeneity:
		return "positive_homogeneity";
	case Property::convexity:
		return "convexity";
	case Property::star_shaped:
		return "star_shaped";
	}
	return "unknown";
}

std::optional<Property> property_from_string(std::string_view s) noexcept {
	for (auto p : all_properties()) {
		if (to_string(p) == s) {
			return p;
		}
	}
	return std::nullopt;
}

const std::vector<Property> &all_properties() {
	static const std::vector<Property> all{Property::monotonicity, Property::translation_invariance,
	                                       Property::positive_homogeneity, Property::convexity,
	                                       Property::star_shaped};
	return all;
}

std::string_view to_string(Family f) noexcept { return f == Family::random ? "random" : "two_atom"; }

std::optional<Family> family_from_string(std::string_view s) noexcept {
	if (s == "random") {
		return Family::random;
	}
	if (s == "two_atom") {
		return Family::two_atom;
	}
	return std::nullopt;
}

std::string_view PropertyReport::verdict() const noexcept {
	return failures.empty() ? "no-counterexample-found" : "counterexample";
}

PropertyReport check_property(const MeasureSpec &spec, Property property, int trials, std::uint64_t seed, double tol,
                              Family family) {
	check_args(trials, tol);
	const Evaluator rho(spec);
	PropertyReport report;
	report.property = property;
	report.family = family;
	report.trials = trials;
	report.tolerance = tol;
	for (int i = 0; i < trials; ++i) {
		bool kinked = false;
		auto outcome = run_trial(rho, property, family, i, trial_seed(seed, i), tol, &kinked);
		if (kinked) {
			++report.nondifferentiable_trials;
		}
		if (outcome.status == TrialStatus::inconclusive) {
			++report.inconclusive;
		}
		for (auto &f : outcome.failures) {
			report.failures.push_back(std::move(f));
		}
	}
	return report;
}

TrialOutcome replay_trial(const MeasureSpec &spec, Property property, std::uint64_t seed, double tol, Family family) {
	check_args(1, tol);
	const Evaluator rho(spec);
	return run_trial(rho, property, family, 0, seed, tol, nullptr);
}

HypothesisReport check_score_hypotheses(const MultiplicativeScore &score, const ValidationGrid &grid) {
	if (grid.points < 3 || !(grid.hi > grid.lo)) {
		throw InputError("hypothesis grid needs lo < hi and at least 3 points");
	}
	std::vector<double> axis;
	for (int i = 0; i < grid.points; ++i) {
		axis.push_back(i + 1 == grid.points ? grid.hi : grid.lo + (grid.hi - grid.lo) * i / (grid.points - 1));
	}
	const auto h = [&](double z, double x) { return score.h(z, x).mean(); };
	const auto slack = [](double v) { return 1e-9 * (1.0 + std::abs(v)); };

	HypothesisReport report;
	{
		ValidationCheck c{"h_convex_in_x", true, true, {}};
		for (double z : axis) {
			for (std::size_t i = 0; i < axis.size() && c.passed; ++i) {
				for (std::size_t j = i + 1; j < axis.size(); ++j) {
					const double x1 = axis[i];
					const double x2 = axis[j];
					const double mid = h(z, 0.5 * (x1 + x2));
					const double chord = 0.5 * (h(z, x1) + h(z, x2));
					if (mid > chord + slack(chord)) {
						c.passed = false;
						c.counterexample = "midpoint above chord: " + fmt("z", z) + " " + fmt("x1", x1) + " " +
						                   fmt("x2", x2) + " " + fmt("h_mid", mid) + " " + fmt("chord", chord);
						break;
					}
				}
			}
			if (!c.passed) {
				break;
			}
		}
		report.checks.push_back(c);
	}
	{
		ValidationCheck c{"h_star_shaped", true, true, {}};
		for (double lambda : {0.25, 0.5, 0.75}) {
			for (double z : axis) {
				for (double x : axis) {
					const double lhs = h(lambda * z, lambda * x);
					const double rhs = lambda * h(z, x);
					if (c.passed && lhs > rhs + slack(rhs)) {
						c.passed = false;
						c.counterexample = "h(l z, l x) > l h(z, x): " + fmt("lambda", lambda) + " " + fmt("z", z) +
						                   " " + fmt("x", x) + " " + fmt("lhs", lhs) + " " + fmt("rhs", rhs);
					}
				}
			}
		}
		report.checks.push_back(c);
	}
	{
		ValidationCheck c{"score_p_homogeneous", true, true, {}};
		const double p = std::log2(score(0.0, 2.0) / score(0.0, 1.0));
		if (!std::isfinite(p)) {
			c.passed = false;
			c.counterexample = "cannot estimate p from S(0,1) and S(0,2)";
		}
		for (double lambda : grid.scales) {
			for (double z : axis) {
				for (double x : axis) {
					if (!c.passed) {
						break;
					}
					const double lhs = score(lambda * z, lambda * x);
					const double rhs = std::pow(lambda, p) * score(z, x);
					if (std::abs(lhs - rhs) > 1e-8 * std::abs(rhs) + 1e-12) {
						c.passed = false;
						c.counterexample = "S(l z, l x) != l^p S(z, x): " + fmt("p", p) + " " + fmt("lambda", lambda) +
						                   " " + fmt("z", z) + " " + fmt("x", x) + " " + fmt("lhs", lhs) + " " +
						                   fmt("rhs", rhs);
					}
				}
			}
		}
		if (c.passed) {
			report.estimated_p = p;
		}
		report.checks.push_back(c);
	}
	return report;
}

std::vector<HypothesisAlignment> align(const HypothesisReport &hypotheses, const std::vector<PropertyReport> &reports) {
	const auto find = [&](const std::string &name) -> const ValidationCheck * {
		for (const auto &c : hypotheses.checks) {
			if (c.name == name) {
				return &c;
			}
		}
		return nullptr;
	};
	std::vector<HypothesisAlignment> out;
	for (const auto &r : reports) {
		const char *name = nullptr;
		switch (r.property) {
		case Property::positive_homogeneity:
			name = "score_p_homogeneous";
			break;
		case Property::convexity:
			name = "h_convex_in_x";
			break;
		case Property::star_shaped:
			name = "h_star_shaped";
			break;
		default:
			continue;
		}
		const auto *check = find(name);
		if (!check) {
			continue;
		}
		HypothesisAlignment a{r.property, name, r.counterexample(), check->passed, true};
		a.consistent = a.property_counterexample || a.hypothesis_passed;
		out.push_back(a);
	}
	return out;
}

} // namespace elicit
