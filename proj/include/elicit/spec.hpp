#pragma once

#include "elicit/solver.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace elicit {

/// A Young function from the built-in families.
struct PhiSpec {
	enum class Kind {
		power,          // x^p, p >= 1
		exp,            // e^(beta x) - 1
		exp_normalized, // (e^(beta x) - 1) / (e^beta - 1), so phi(1) = 1
		exp_integral,   // (e^(beta x) - 1 - beta x) / beta
	};
	Kind kind = Kind::power;
	double p = 1.0;
	double beta = 1.0;
};

/// Piecewise-constant, right-continuous level function. Lambda(z) equals the
/// level of the last breakpoint <= z; the first level also extends to the left.
struct LambdaSpec {
	std::vector<std::pair<double, double>> breakpoints; // (z, level), levels in (0,1)
};

/// Increasing loss l of a shortfall measure with l(0) = 0.
struct LossSpec {
	enum class Kind {
		exponential,      // e^(beta y) - 1
		piecewise_linear, // a y for y >= 0, b y for y < 0
	};
	Kind kind = Kind::exponential;
	double beta = 1.0;
	double a = 1.0;
	double b = 1.0;
};

struct MuSpec {
	enum class Kind { mean, var, genq, lambda, shortfall };
	Kind kind = Kind::mean;
	double alpha = 0.5;
	PhiSpec phi1;
	PhiSpec phi2;
	LambdaSpec lambda;
	LossSpec loss;
	double psi = 1.0; // constant gauge >= 1
};

/// Increasing scalar maps used as l-transforms and Osband maps.
struct TransformSpec {
	enum class Kind {
		identity,
		power,      // x^k, integer k >= 1
		exp,        // e^(gamma x)
		affine,     // a x + b, a != 0
		log_scaled, // log(x) / gamma, x > 0
	};
	Kind kind = Kind::identity;
	int k = 1;
	double gamma = 1.0;
	double a = 1.0;
	double b = 0.0;
};

/// k-dimensional bijection applied to stacked joint results.
struct JointMapSpec {
	enum class Kind {
		mean_variance, // (z1, z2) -> (z1, z2 - z1^2)
		componentwise, // (z_j) -> (g_j(z_j))
	};
	Kind kind = Kind::componentwise;
	std::vector<TransformSpec> maps;
};

/// Declarative description of a risk measure.
///
/// Exactly one of `name` (a catalogue entry plus its parameters) or the
/// `phi`/`mu` pair is set, unless `joint` lists components instead.
struct MeasureSpec {
	std::optional<std::string> name;
	double alpha = 0.5;
	double p = 2.0;
	double gamma = 1.0;
	PhiSpec phi1;
	PhiSpec phi2;
	LambdaSpec lambda;
	LossSpec loss;
	double psi = 1.0;

	std::optional<PhiSpec> phi;
	std::optional<MuSpec> mu;
	std::optional<bool> convex_in_z; // custom pairs only; sampled when absent

	std::optional<TransformSpec> transform;
	std::optional<TransformSpec> osband;

	std::vector<MeasureSpec> joint;
	std::optional<JointMapSpec> joint_map;

	SolveOptions solver;

	bool is_joint() const noexcept { return !joint.empty(); }
};

/// Parses a MeasureSpec from JSON text. Unknown keys and kinds are rejected
/// with an InputError naming the offending key; `source` prefixes messages.
MeasureSpec parse_measure_spec(const std::string &json_text, const std::string &source = "spec");

/// Reads and parses a JSON spec file.
MeasureSpec load_measure_spec(const std::string &path);

/// Short human-readable label, e.g. "var(alpha=0.95)".
std::string describe(const MeasureSpec &spec);

} // namespace elicit
