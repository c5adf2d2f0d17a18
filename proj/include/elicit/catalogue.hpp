#pragma once

#include "elicit/empirical.hpp"
#include "elicit/scores.hpp"
#include "elicit/spec.hpp"

#include <string>
#include <vector>

namespace elicit {

/// Piecewise-constant right-continuous level function with exact integrals.
class LevelFunction {
public:
	/// Throws InputError unless breakpoints are finite, strictly increasing in
	/// z, non-empty, and all levels lie in (0,1).
	explicit LevelFunction(LambdaSpec spec);

	double operator()(double z) const noexcept;
	/// Lambda(z-).
	double left_limit(double z) const noexcept;
	/// Integral of Lambda over [a, b], a <= b, summed segment by segment.
	double integral(double a, double b) const noexcept;

	bool is_constant() const noexcept;
	bool is_nonincreasing() const noexcept;
	std::vector<double> knots() const;

private:
	std::vector<std::pair<double, double>> breakpoints_;
};

/// (e^u - 1 - u), accurate for small |u|.
double exp_remainder(double u) noexcept;

/// l(y) and its antiderivative L(x) = int_0^x l(y) dy.
double loss_value(const LossSpec &loss, double y);
double loss_integral(const LossSpec &loss, double x);

YoungFn make_phi(const PhiSpec &spec);
MuFn make_mu(const MuSpec &spec);

/// Catalogue entries accepted in MeasureSpec::name.
const std::vector<std::string> &catalogue_names();

/// Builds the score of a single (non-joint) spec. The transform and Osband
/// parts of the spec are ignored here; see transforms.hpp.
/// Throws InputError on unknown names, out-of-range parameters or a failed
/// shortfall gauge condition.
MultiplicativeScore build(const MeasureSpec &spec);

/// Reference value computed directly from the distribution, without the
/// score. Interval-valued for quantile-type measures.
struct OracleValue {
	double lo = 0.0;
	double hi = 0.0;
};

/// Available for mean, var, expectile, lp_quantile, lambda_var, entropic and
/// shortfall. Throws InputError for anything else.
OracleValue oracle(const MeasureSpec &spec, const WeightedSample &sample);

} // namespace elicit
