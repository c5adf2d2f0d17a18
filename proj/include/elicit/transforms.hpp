#pragma once

#include "elicit/empirical.hpp"
#include "elicit/solver.hpp"
#include "elicit/spec.hpp"

#include <functional>
#include <vector>

namespace elicit {

/// Forward map. Throws DomainError outside the domain (log_scaled at x <= 0)
/// or on a non-finite result.
double apply(const TransformSpec &t, double x);
/// Inverse map; for even powers the non-negative branch. Throws DomainError
/// outside the range.
double invert(const TransformSpec &t, double y);
/// True if the forward map is non-decreasing on its domain.
bool is_increasing(const TransformSpec &t);
/// Throws InputError on invalid parameters (k < 1, gamma <= 0, a == 0).
void check_transform(const TransformSpec &t);

std::function<double(double)> as_function(const TransformSpec &t);

/// solve(build(spec), pushforward of s through ell).
ArgminInterval elicit_transformed(const MeasureSpec &spec, const TransformSpec &ell, const WeightedSample &s);

struct OsbandResult {
	ArgminInterval base; // before g
	double lo = 0.0;
	double hi = 0.0;
};
/// The argmin interval of the spec on the ell-transformed sample, mapped
/// through g. Endpoints are swapped if g is decreasing. Throws DomainError if
/// g is undefined at the solver output or not monotone across it.
OsbandResult elicit_osband(const MeasureSpec &spec, const TransformSpec &ell, const TransformSpec &g,
                           const WeightedSample &s);

std::vector<double> apply(const JointMapSpec &g, const std::vector<double> &z);
std::vector<double> invert(const JointMapSpec &g, const std::vector<double> &y);

struct JointResult {
	std::vector<ArgminInterval> components;
	/// g(rho_1^-, ..., rho_k^-), or the plain lower endpoints without a map.
	std::vector<double> values;
};

/// Solves every component separately (the additive score is separable) and
/// applies the optional k-dimensional map to the stacked lower endpoints.
/// A component's own Osband map is applied before the joint map.
JointResult elicit_joint(const MeasureSpec &spec, const WeightedSample &s);

/// Full pipeline for a single spec: transform, solve, then Osband map.
OsbandResult elicit(const MeasureSpec &spec, const WeightedSample &s);

} // namespace elicit
