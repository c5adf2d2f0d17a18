#include "elicit/solver.hpp"

#include "detail/crossing.hpp"
#include "elicit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace elicit {

namespace {

// Sign decisions on sums of per-atom slopes allow this much relative rounding,
// so that exact ties (e.g. F(z) == alpha) resolve consistently.
constexpr double kSlopeSlack = 1e-12;

struct SlopeSums {
	double left = 0.0;
	double right = 0.0;
	double magnitude = 0.0;

	bool right_nonnegative() const noexcept { return right >= -kSlopeSlack * magnitude; }
	bool left_positive() const noexcept { return left > kSlopeSlack * magnitude; }
};

SlopeSums slope_sums(const MultiplicativeScore &score, const WeightedSample &sample, double z) {
	SlopeSums s;
	for (const auto &a : sample.atoms()) {
		if (a.weight == 0.0) {
			continue;
		}
		const auto d = score.dz(z, a.value);
		s.left += a.weight * d.left;
		s.right += a.weight * d.right;
		s.magnitude += a.weight * (std::abs(d.left) + std::abs(d.right));
	}
	return s;
}

double bracket_padding(const WeightedSample &sample) {
	return 1e-6 * (1.0 + (sample.max() - sample.min()));
}

// Atoms and score knots inside the hull, plus one padded point on each side.
std::vector<double> search_grid(const MultiplicativeScore &score, const WeightedSample &sample) {
	const double pad = bracket_padding(sample);
	std::vector<double> grid;
	grid.reserve(sample.size() + score.knots().size() + 2);
	grid.push_back(sample.min() - pad);
	for (const auto &a : sample.atoms()) {
		grid.push_back(a.value);
	}
	for (double k : score.knots()) {
		if (k > sample.min() && k < sample.max()) {
			grid.push_back(k);
		}
	}
	grid.push_back(sample.max() + pad);
	std::sort(grid.begin(), grid.end());
	grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
	return grid;
}

// Root of a continuous increasing g inside a bisection bracket: one secant
// step, kept inside the bracket. Smooth crossings then land well below tol.
template <typename G>
double secant_in_bracket(const detail::Crossing &c, const G &g) {
	const double glo = g(c.lo);
	const double ghi = g(c.hi);
	if (!(ghi > glo)) {
		return c.z;
	}
	return c.lo + (c.hi - c.lo) * std::clamp(-glo / (ghi - glo), 0.0, 1.0);
}

template <typename Pred, typename G>
double infimum_on_grid(const std::vector<double> &grid, const Pred &pred, const G &g, double fallback,
                       const SolveOptions &opts) {
	const auto k = detail::first_true(grid, pred);
	if (k == grid.size()) {
		return fallback;
	}
	if (k == 0) {
		return grid.front();
	}
	const auto c = detail::bracket_crossing(grid[k - 1], grid[k], pred, opts.tol_z, opts.max_iter);
	return c.exact ? c.z : secant_in_bracket(c, g);
}

struct Candidate {
	double z;
	double value;
};

bool better(const Candidate &a, const Candidate &b) {
	return a.value < b.value || (a.value == b.value && a.z < b.z);
}

Candidate golden_section(const MultiplicativeScore &score, const WeightedSample &sample, double a, double b,
                         const SolveOptions &opts) {
	static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
	const auto f = [&](double z) { return expected_score(score, sample, z); };
	double c = b - inv_phi * (b - a);
	double d = a + inv_phi * (b - a);
	double fc = f(c);
	double fd = f(d);
	int iterations = 0;
	while (b - a > opts.tol_z) {
		if (++iterations > opts.max_iter) {
			const double best = fc <= fd ? c : d;
			throw NumericalError("golden-section search did not reach the z-tolerance within max_iter", best);
		}
		if (fc <= fd) {
			b = d;
			d = c;
			fd = fc;
			c = b - inv_phi * (b - a);
			fc = f(c);
		} else {
			a = c;
			c = d;
			fc = fd;
			d = a + inv_phi * (b - a);
			fd = f(d);
		}
		if (!(c < d)) {
			break;
		}
	}
	const double z = 0.5 * (a + b);
	return {z, f(z)};
}

Candidate grid_refine(const MultiplicativeScore &score, const WeightedSample &sample, const SolveOptions &opts) {
	std::vector<double> points;
	const int n = std::max(opts.grid_points, 2);
	points.reserve(static_cast<std::size_t>(n) + sample.size() + score.knots().size());
	const double lo = sample.min();
	const double hi = sample.max();
	for (int i = 0; i < n; ++i) {
		points.push_back(i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1));
	}
	for (const auto &a : sample.atoms()) {
		points.push_back(a.value);
	}
	for (double k : score.knots()) {
		if (k > lo && k < hi) {
			points.push_back(k);
		}
	}
	std::sort(points.begin(), points.end());
	points.erase(std::unique(points.begin(), points.end()), points.end());

	std::size_t best_index = 0;
	Candidate best{points[0], expected_score(score, sample, points[0])};
	for (std::size_t i = 1; i < points.size(); ++i) {
		const Candidate c{points[i], expected_score(score, sample, points[i])};
		if (better(c, best)) {
			best = c;
			best_index = i;
		}
	}
	if (points.size() < 2) {
		return best;
	}
	const double left = points[best_index == 0 ? 0 : best_index - 1];
	const double right = points[std::min(best_index + 1, points.size() - 1)];
	const auto refined = golden_section(score, sample, left, right, opts);
	return better(refined, best) ? refined : best;
}

} // namespace

std::string_view to_string(SolveMethod m) noexcept {
	switch (m) {
	case SolveMethod::subgradient_bisection:
		return "subgradient-bisection";
	case SolveMethod::golden_section:
		return "golden-section";
	case SolveMethod::grid_refine:
		return "grid-refine";
	}
	return "unknown";
}

double expected_score(const MultiplicativeScore &score, const WeightedSample &sample, double z) {
	double total = 0.0;
	for (const auto &a : sample.atoms()) {
		if (a.weight != 0.0) {
			total += a.weight * score(z, a.value);
		}
	}
	return total;
}

OneSided expected_slope(const MultiplicativeScore &score, const WeightedSample &sample, double z) {
	const auto s = slope_sums(score, sample, z);
	return {s.left, s.right};
}

FocCheck foc_check(const MultiplicativeScore &score, const WeightedSample &sample, double z, double tol) {
	const auto s = slope_sums(score, sample, z);
	FocCheck out;
	out.lhs = s.left;
	out.rhs = s.right;
	out.residual = std::max({0.0, s.left, -s.right});
	out.satisfied = out.residual <= tol;
	return out;
}

ArgminInterval solve(const MultiplicativeScore &score, const WeightedSample &sample, const SolveOptions &opts) {
	if (!(opts.tol_z >= 0.0) || opts.max_iter < 1) {
		throw InputError("solver options need tol_z >= 0 and max_iter >= 1");
	}
	ArgminInterval out;
	out.method = opts.method.value_or(score.convex_in_z() ? SolveMethod::subgradient_bisection : SolveMethod::grid_refine);

	if (sample.min() == sample.max()) {
		// S(z, c) vanishes only at z = c.
		out.lo = out.hi = sample.min();
	} else if (out.method == SolveMethod::subgradient_bisection) {
		const auto grid = search_grid(score, sample);
		const auto lo_pred = [&](double z) { return slope_sums(score, sample, z).right_nonnegative(); };
		const auto hi_pred = [&](double z) { return slope_sums(score, sample, z).left_positive(); };
		const auto right_slope = [&](double z) { return slope_sums(score, sample, z).right; };
		const auto left_slope = [&](double z) { return slope_sums(score, sample, z).left; };
		double lo = infimum_on_grid(grid, lo_pred, right_slope, sample.max(), opts);
		double hi = infimum_on_grid(grid, hi_pred, left_slope, sample.max(), opts);
		lo = std::clamp(lo, sample.min(), sample.max());
		hi = std::clamp(hi, sample.min(), sample.max());
		if (hi < lo) {
			// Both bisections bracket the same smooth crossing from above.
			lo = hi = 0.5 * (lo + hi);
		}
		out.lo = lo;
		out.hi = hi;
	} else if (out.method == SolveMethod::golden_section) {
		const auto best = golden_section(score, sample, sample.min(), sample.max(), opts);
		out.lo = out.hi = best.z;
	} else {
		const auto best = grid_refine(score, sample, opts);
		out.lo = out.hi = best.z;
	}

	if (!score.convex_in_z()) {
		out.warnings.emplace_back("nonconvex-heuristic");
	}
	out.expected_score_at_min = expected_score(score, sample, out.lo);
	out.foc_residual = std::max(foc_check(score, sample, out.lo).residual, foc_check(score, sample, out.hi).residual);
	return out;
}

} // namespace elicit
