#pragma once

#include "elicit/empirical.hpp"
#include "elicit/scores.hpp"

#include <optional>
#include <vector>

namespace elicit {

/// Threshold curves of the inf-representation
///
///   rho-[X] = inf{z : F(z) / (1 - F(z)) >= G+(z)}
///   rho+[X] = inf{z : F(z-) / (1 - F(z-)) > G-(z)}
///
/// G+ is the ratio of conditional expectations E[-d+S(z,X) | X > z] over
/// E[d+S(z,X) | X <= z]; G- uses left derivatives and the split X >= z versus
/// X < z. An atom sitting exactly at z contributes its one-sided derivative on
/// the diagonal, which is what makes the VaR curve G+ = alpha / (1 - alpha)
/// exact at atoms.
///
/// Both return nullopt where a conditioning event is empty or the denominator
/// is not positive.
std::optional<double> g_plus(const MultiplicativeScore &score, const WeightedSample &sample, double z);
std::optional<double> g_minus(const MultiplicativeScore &score, const WeightedSample &sample, double z);

enum class Side { minus, plus };

/// The z-values scanned for crossings: atoms, atom midpoints, 512 uniform fill
/// points over the hull, score knots inside the hull and one padded point on
/// each side.
std::vector<double> representation_grid(const MultiplicativeScore &score, const WeightedSample &sample);

/// rho- (Side::minus) or rho+ (Side::plus) as the first crossing on the scan
/// grid, refined by bisection to tol. Throws NumericalError if no crossing is
/// found inside the hull.
double rho_from_representation(const MultiplicativeScore &score, const WeightedSample &sample, Side side,
                               double tol = 1e-9, int max_iter = 200);

struct RepresentationRow {
	double z = 0.0;
	double F = 0.0;
	std::optional<double> gplus;
	std::optional<double> gminus;
	std::optional<double> ratio; // F / (1 - F)
};

/// Rows for z strictly inside the hull: `points` uniform points plus the
/// interior atoms and atom midpoints, sorted by z.
std::vector<RepresentationRow> representation_rows(const MultiplicativeScore &score, const WeightedSample &sample,
                                                   int points = 200);

} // namespace elicit
