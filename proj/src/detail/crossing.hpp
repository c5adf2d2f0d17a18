#pragma once

#include "elicit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace elicit::detail {

/// First index of a sorted grid where a monotone (false, ..., true) predicate
/// holds; grid.size() if it never does.
template <typename Pred>
std::size_t first_true(const std::vector<double> &grid, const Pred &pred) {
	std::size_t lo = 0;
	std::size_t hi = grid.size();
	while (lo < hi) {
		const std::size_t mid = lo + (hi - lo) / 2;
		if (pred(grid[mid])) {
			hi = mid;
		} else {
			lo = mid + 1;
		}
	}
	return lo;
}

struct Crossing {
	double z;     // the infimum estimate
	double lo;    // final bracket; pred(lo) false, pred(hi) true
	double hi;
	bool exact;   // z is a or b itself, not a bisection midpoint
};

/// inf{z in (a, b] : pred(z)} for a monotone predicate with pred(a) false and
/// pred(b) true.
///
/// If pred already holds just to the right of a, the infimum is a itself (the
/// set is open at a). If pred fails on the whole open cell, b is returned
/// exactly. Otherwise bisection brackets the crossing to width tol and the
/// midpoint is returned.
template <typename Pred>
Crossing bracket_crossing(double a, double b, const Pred &pred, double tol, int max_iter) {
	const double probe = a + std::min(0.5 * (b - a), 1e-12 * (1.0 + std::abs(a)));
	// Adjacent doubles: no interior point to test.
	if (probe >= b) {
		return {b, a, b, true};
	}
	if (pred(probe)) {
		return {a, a, probe, true};
	}
	double lo = probe;
	double hi = b;
	int iterations = 0;
	while (hi - lo > tol) {
		const double mid = lo + 0.5 * (hi - lo);
		if (mid <= lo || mid >= hi) {
			break;
		}
		if (++iterations > max_iter) {
			throw NumericalError("bisection did not reach the z-tolerance within max_iter", hi);
		}
		if (pred(mid)) {
			hi = mid;
		} else {
			lo = mid;
		}
	}
	if (hi == b) {
		return {b, lo, hi, true};
	}
	return {0.5 * (lo + hi), lo, hi, false};
}

template <typename Pred>
double refine_crossing(double a, double b, const Pred &pred, double tol, int max_iter) {
	return bracket_crossing(a, b, pred, tol, max_iter).z;
}

} // namespace elicit::detail
