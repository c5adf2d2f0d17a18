#pragma once

#include "elicit/empirical.hpp"
#include "elicit/scores.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elicit {

enum class SolveMethod { subgradient_bisection, golden_section, grid_refine };

std::string_view to_string(SolveMethod m) noexcept;

struct SolveOptions {
	double tol_z = 1e-9;
	int max_iter = 200;
	int grid_points = 2048;
	/// Overrides the method chosen from the score's convexity flag.
	std::optional<SolveMethod> method;
};

/// The argmin set [lo, hi] of z -> E[S(z, X)].
struct ArgminInterval {
	double lo = 0.0;
	double hi = 0.0;
	double expected_score_at_min = 0.0;
	SolveMethod method = SolveMethod::subgradient_bisection;
	double foc_residual = 0.0;
	std::vector<std::string> warnings;

	double width() const noexcept { return hi - lo; }
};

/// E[S(z, X)] = sum_i w_i S(z, x_i).
double expected_score(const MultiplicativeScore &score, const WeightedSample &sample, double z);

/// One-sided z-derivatives of the expected score at z (left, right).
OneSided expected_slope(const MultiplicativeScore &score, const WeightedSample &sample, double z);

/// Computes the argmin interval.
///
/// For scores flagged convex in z the endpoints are
///   lo = inf{z : d+/dz E[S(z,X)] >= 0},   hi = inf{z : d-/dz E[S(z,X)] > 0},
/// each located by a monotone search over the atoms and score knots followed
/// by bisection inside the bracketing cell. Other scores get a grid scan with
/// golden-section refinement and a "nonconvex-heuristic" warning.
///
/// Throws NumericalError (carrying the best iterate) if max_iter is exhausted.
ArgminInterval solve(const MultiplicativeScore &score, const WeightedSample &sample, const SolveOptions &opts = {});

struct FocCheck {
	double lhs = 0.0; // left derivative of the expected score
	double rhs = 0.0; // right derivative of the expected score
	bool satisfied = false;
	double residual = 0.0; // max(0, lhs, -rhs)
};

/// First-order condition: z is optimal iff lhs <= 0 <= rhs.
FocCheck foc_check(const MultiplicativeScore &score, const WeightedSample &sample, double z, double tol = 1e-6);

} // namespace elicit
