#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace elicit {

/// A pair of one-sided quantities, e.g. left and right derivatives.
struct OneSided {
	double left = 0.0;
	double right = 0.0;

	double mean() const noexcept { return 0.5 * (left + right); }
};

/// Young function phi on [0, inf) with its one-sided derivatives.
///
/// Missing derivative callables are replaced by second-order one-sided finite
/// differences with step cbrt(eps) * max(1, t).
class YoungFn {
public:
	using Fn = std::function<double(double)>;

	struct Parts {
		std::string name;
		Fn value;
		Fn dplus;  // right derivative on [0, inf)
		Fn dminus; // left derivative on (0, inf)
		std::optional<double> homogeneity_degree;
		bool differentiable = true;
	};

	explicit YoungFn(Parts parts);

	const std::string &name() const noexcept { return parts_.name; }
	double operator()(double t) const { return parts_.value(t); }
	double dplus(double t) const;
	double dminus(double t) const;
	bool has_analytic_derivatives() const noexcept { return parts_.dplus && parts_.dminus; }
	const std::optional<double> &homogeneity_degree() const noexcept { return parts_.homogeneity_degree; }
	bool differentiable() const noexcept { return parts_.differentiable; }

private:
	Parts parts_;
};

/// Weight mu : R^2 -> [0,1] with one-sided z-derivatives.
///
/// The diagonal limits give lim mu(z, x) as z tends to x from above and from
/// below; they enter the one-sided derivatives of S at z = x whenever
/// phi'(0+) > 0 (e.g. quantile-type scores).
class MuFn {
public:
	using Fn2 = std::function<double(double, double)>;
	using Fn1 = std::function<double(double)>;

	struct Parts {
		std::string name;
		Fn2 value;
		Fn2 dz_plus;
		Fn2 dz_minus;
		Fn1 limit_above; // x -> lim_{z -> x+} mu(z, x)
		Fn1 limit_below; // x -> lim_{z -> x-} mu(z, x)
		bool translation_compatible = false; // mu(z, x + c) == mu(z - c, x)
		bool scale_invariant = false;        // mu(l z, l x) == mu(z, x), l > 0
	};

	explicit MuFn(Parts parts);

	const std::string &name() const noexcept { return parts_.name; }
	double operator()(double z, double x) const { return parts_.value(z, x); }
	double dz_plus(double z, double x) const;
	double dz_minus(double z, double x) const;
	double limit_above(double x) const;
	double limit_below(double x) const;
	bool has_analytic_derivatives() const noexcept { return parts_.dz_plus && parts_.dz_minus; }
	bool translation_compatible() const noexcept { return parts_.translation_compatible; }
	bool scale_invariant() const noexcept { return parts_.scale_invariant; }

private:
	Parts parts_;
};

/// S(z, x) = phi(|x - z|) * mu(z, x).
class MultiplicativeScore {
public:
	struct Traits {
		bool convex_in_z = false;
		std::optional<double> homogeneity_degree; // S(l z, l x) = l^p S(z, x)
		// z-locations, independent of x, where the z-derivative of S may jump
		// (e.g. breakpoints of a piecewise-constant level function).
		std::vector<double> knots;
	};

	MultiplicativeScore(std::string name, YoungFn phi, MuFn mu, Traits traits);

	const std::string &name() const noexcept { return name_; }
	const YoungFn &phi() const noexcept { return phi_; }
	const MuFn &mu() const noexcept { return mu_; }
	bool convex_in_z() const noexcept { return traits_.convex_in_z; }
	const std::optional<double> &homogeneity_degree() const noexcept { return traits_.homogeneity_degree; }
	const std::vector<double> &knots() const noexcept { return traits_.knots; }
	bool has_analytic_derivatives() const noexcept {
		return phi_.has_analytic_derivatives() && mu_.has_analytic_derivatives();
	}

	/// phi(|x - z|) mu(z, x); exactly zero on the diagonal.
	double operator()(double z, double x) const;

	/// One-sided z-derivatives of S: left = d-/dz S, right = d+/dz S.
	OneSided dz(double z, double x) const;

	/// h = -dS/dz, both one-sided values: left = -d-/dz S, right = -d+/dz S.
	OneSided h(double z, double x) const;

private:
	std::string name_;
	YoungFn phi_;
	MuFn mu_;
	Traits traits_;
};

// ---------------------------------------------------------------------------
// Axiom validation on grids

struct ValidationGrid {
	double lo = -5.0;
	double hi = 5.0;
	int points = 41;
	std::vector<double> scales{0.5, 2.0, 3.0};
	std::vector<double> shifts{-2.5, 0.75, 3.0};
};

struct ValidationCheck {
	std::string name;
	bool applicable = true; // false when the checked flag is not declared
	bool passed = true;
	std::string counterexample;
};

struct ValidationReport {
	std::vector<ValidationCheck> checks;

	bool passed() const noexcept;
	const ValidationCheck *find(const std::string &name) const noexcept;
};

/// Grid checks of the structural axioms. Failures are report entries.
/// Throws InputError if the grid is degenerate (fewer than 3 points, or
/// non-finite / empty extent).
ValidationReport validate(const MultiplicativeScore &score, const ValidationGrid &grid = {});

/// Midpoint test of z -> S(z, x) on the grid; used to infer convex_in_z for
/// user-composed scores.
bool sampled_convex_in_z(const MultiplicativeScore &score, const ValidationGrid &grid = {});

} // namespace elicit
