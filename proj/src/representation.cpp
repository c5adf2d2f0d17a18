#include "elicit/representation.hpp"

#include "detail/crossing.hpp"
#include "elicit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace elicit {

namespace {

constexpr double kRatioSlack = 1e-12;
constexpr int kFillPoints = 512;

// Weighted sums over the two sides of the split at z.
struct SplitSums {
	double upper_sum = 0.0;  // sum of w * (-dS) on the upper event
	double upper_prob = 0.0;
	double lower_sum = 0.0;  // sum of w * dS on the lower event
	double lower_prob = 0.0;
};

SplitSums split_sums(const MultiplicativeScore &score, const WeightedSample &sample, double z, Side side) {
	SplitSums s;
	for (const auto &a : sample.atoms()) {
		const auto d = score.dz(z, a.value);
		// Right derivatives: the atom at z belongs to the lower event X <= z.
		// Left derivatives: it belongs to the upper event X >= z.
		const bool upper = side == Side::minus ? a.value > z : a.value >= z;
		const double slope = side == Side::minus ? d.right : d.left;
		if (upper) {
			s.upper_sum -= a.weight * slope;
			s.upper_prob += a.weight;
		} else {
			s.lower_sum += a.weight * slope;
			s.lower_prob += a.weight;
		}
	}
	return s;
}

std::optional<double> g_value(const SplitSums &s) {
	if (s.upper_prob <= 0.0 || s.lower_prob <= 0.0) {
		return std::nullopt;
	}
	const double numerator = s.upper_sum / s.upper_prob;
	const double denominator = s.lower_sum / s.lower_prob;
	if (!(denominator > 0.0)) {
		return std::nullopt;
	}
	return numerator / denominator;
}

// F/(1-F) against G with the probability mass below z taken from the sample's
// cumulative table (cdf for the minus side, cdf_left for the plus side).
bool crossing_condition(const MultiplicativeScore &score, const WeightedSample &sample, double z, Side side) {
	const double F = side == Side::minus ? sample.cdf(z) : sample.cdf_left(z);
	if (F >= 1.0) {
		return true;
	}
	const auto g = g_value(split_sums(score, sample, z, side));
	if (!g) {
		return false;
	}
	const double lhs = F / (1.0 - F);
	if (side == Side::minus) {
		return lhs >= *g * (1.0 - kRatioSlack);
	}
	return lhs > *g * (1.0 + kRatioSlack);
}

void sort_unique(std::vector<double> &v) {
	std::sort(v.begin(), v.end());
	v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

std::optional<double> g_plus(const MultiplicativeScore &score, const WeightedSample &sample, double z) {
	return g_value(split_sums(score, sample, z, Side::minus));
}

std::optional<double> g_minus(const MultiplicativeScore &score, const WeightedSample &sample, double z) {
	return g_value(split_sums(score, sample, z, Side::plus));
}

std::vector<double> representation_grid(const MultiplicativeScore &score, const WeightedSample &sample) {
	const double lo = sample.min();
	const double hi = sample.max();
	const double pad = 1e-6 * (1.0 + (hi - lo));
	std::vector<double> grid;
	grid.reserve(2 * sample.size() + kFillPoints + score.knots().size() + 2);
	grid.push_back(lo - pad);
	grid.push_back(hi + pad);
	const auto atoms = sample.atoms();
	for (std::size_t i = 0; i < atoms.size(); ++i) {
		grid.push_back(atoms[i].value);
		if (i + 1 < atoms.size()) {
			grid.push_back(0.5 * (atoms[i].value + atoms[i + 1].value));
		}
	}
	if (hi > lo) {
		for (int i = 0; i < kFillPoints; ++i) {
			grid.push_back(i + 1 == kFillPoints ? hi : lo + (hi - lo) * i / (kFillPoints - 1));
		}
	}
	for (double k : score.knots()) {
		if (k > lo && k < hi) {
			grid.push_back(k);
		}
	}
	sort_unique(grid);
	return grid;
}

double rho_from_representation(const MultiplicativeScore &score, const WeightedSample &sample, Side side, double tol,
                               int max_iter) {
	if (sample.min() == sample.max()) {
		return sample.min();
	}
	const auto pred = [&](double z) { return crossing_condition(score, sample, z, side); };
	const auto grid = representation_grid(score, sample);
	// A linear scan keeps the first crossing even if the condition is not
	// monotone (non-convex scores).
	std::size_t k = 0;
	while (k < grid.size() && !pred(grid[k])) {
		++k;
	}
	if (k == grid.size()) {
		throw NumericalError("no crossing of F/(1-F) and G inside the sample hull", sample.max());
	}
	if (k == 0) {
		return sample.min();
	}
	const double z = detail::refine_crossing(grid[k - 1], grid[k], pred, tol, max_iter);
	return std::clamp(z, sample.min(), sample.max());
}

std::vector<RepresentationRow> representation_rows(const MultiplicativeScore &score, const WeightedSample &sample,
                                                   int points) {
	const double lo = sample.min();
	const double hi = sample.max();
	std::vector<RepresentationRow> rows;
	if (!(hi > lo)) {
		return rows;
	}
	std::vector<double> zs;
	for (int i = 1; i <= points; ++i) {
		zs.push_back(lo + (hi - lo) * i / (points + 1));
	}
	const auto atoms = sample.atoms();
	for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
		zs.push_back(0.5 * (atoms[i].value + atoms[i + 1].value));
		if (i > 0) {
			zs.push_back(atoms[i].value);
		}
	}
	sort_unique(zs);
	rows.reserve(zs.size());
	for (double z : zs) {
		if (!(z > lo && z < hi)) {
			continue;
		}
		RepresentationRow r;
		r.z = z;
		r.F = sample.cdf(z);
		r.gplus = g_plus(score, sample, z);
		r.gminus = g_minus(score, sample, z);
		if (r.F < 1.0) {
			r.ratio = r.F / (1.0 - r.F);
		}
		rows.push_back(r);
	}
	return rows;
}

} // namespace elicit
