#pragma once

#include "elicit/empirical.hpp"
#include "elicit/scores.hpp"
#include "elicit/spec.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elicit {

enum class Property { monotonicity, translation_invariance, positive_homogeneity, convexity, star_shaped };

std::string_view to_string(Property p) noexcept;
/// Parses "monotonicity", "translation_invariance", ...; nullopt otherwise.
std::optional<Property> property_from_string(std::string_view s) noexcept;
const std::vector<Property> &all_properties();

/// Instance generators.
///   random:   3-30 atoms, values uniform in [-10, 10], exponential weights.
///   two_atom: P(X=a, Y=0) = P(X=0, Y=b) = p, P(X=0, Y=0) = 1 - 2p with
///             p in (0, 0.5) and a, b in (0, 10]; mixing weight 1/2. Built to
///             expose non-convexity of quantiles.
enum class Family { random, two_atom };

std::string_view to_string(Family f) noexcept;
std::optional<Family> family_from_string(std::string_view s) noexcept;

struct PropertyFailure {
	int trial = 0;
	std::uint64_t seed = 0;  // per-trial seed, enough to replay
	std::string side;        // "lo" or "hi"
	double parameter = 0.0;  // c, lambda, or the mixing weight
	std::vector<PairedAtom> instance; // y == x for single-sample properties
	double lhs = 0.0;
	double rhs = 0.0;
	double gap = 0.0;        // amount by which the inequality is violated
};

struct PropertyReport {
	Property property = Property::monotonicity;
	Family family = Family::random;
	int trials = 0;
	int inconclusive = 0;
	// Trials where z -> E[S(z, X)] has a kink at rho-[X]; convexity and
	// star-shapedness conclusions presume differentiability there.
	int nondifferentiable_trials = 0;
	double tolerance = 0.0;
	std::vector<PropertyFailure> failures;

	bool counterexample() const noexcept { return !failures.empty(); }
	/// "counterexample" or "no-counterexample-found"; never "proven".
	std::string_view verdict() const noexcept;
};

/// Seeded randomized check of a risk-measure property. Solver failures make a
/// trial inconclusive. Throws InputError if trials < 1 or tol <= 0.
PropertyReport check_property(const MeasureSpec &spec, Property property, int trials, std::uint64_t seed,
                              double tol = 1e-7, Family family = Family::random);

/// Re-runs a single trial from its per-trial seed.
enum class TrialStatus { passed, failed, inconclusive };
struct TrialOutcome {
	TrialStatus status = TrialStatus::passed;
	std::vector<PropertyFailure> failures;
};
TrialOutcome replay_trial(const MeasureSpec &spec, Property property, std::uint64_t trial_seed, double tol = 1e-7,
                          Family family = Family::random);

/// Score-level hypotheses: x -> h(z, x) midpoint convex, h star-shaped
/// (h(l z, l x) <= l h(z, x) for l in [0,1]) and S p-homogeneous for some p.
struct HypothesisReport {
	std::vector<ValidationCheck> checks; // h_convex_in_x, h_star_shaped, score_p_homogeneous
	std::optional<double> estimated_p;   // set when score_p_homogeneous passes
};

HypothesisReport check_score_hypotheses(const MultiplicativeScore &score, const ValidationGrid &grid = {});

/// Lines up measure-level verdicts with the score-level hypotheses they imply
/// (a positively homogeneous measure needs a p-homogeneous score, a convex one
/// needs h convex in x, a star-shaped one needs h star-shaped).
struct HypothesisAlignment {
	Property property;
	std::string hypothesis;
	bool property_counterexample = false;
	bool hypothesis_passed = false;
	/// False when the measure showed no counterexample but the implied
	/// hypothesis failed.
	bool consistent = true;
};

std::vector<HypothesisAlignment> align(const HypothesisReport &hypotheses, const std::vector<PropertyReport> &reports);

} // namespace elicit
