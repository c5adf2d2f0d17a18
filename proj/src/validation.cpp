#include "elicit/errors.hpp"
#include "elicit/scores.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace elicit {

namespace {

constexpr double kAbsTol = 1e-12;
constexpr double kRelTol = 1e-10;

std::string fmt_point(const char *label, std::initializer_list<std::pair<const char *, double>> values) {
	std::string out = label;
	char buf[64];
	for (const auto &[name, v] : values) {
		std::snprintf(buf, sizeof buf, " %s=%.17g", name, v);
		out += buf;
	}
	return out;
}

struct CheckBuilder {
	ValidationCheck check;

	explicit CheckBuilder(std::string name, bool applicable = true) {
		check.name = std::move(name);
		check.applicable = applicable;
	}

	// Records the first counterexample only.
	void fail(std::string counterexample) {
		if (check.passed) {
			check.passed = false;
			check.counterexample = std::move(counterexample);
		}
	}
};

std::vector<double> make_axis(const ValidationGrid &grid) {
	std::vector<double> axis(static_cast<std::size_t>(grid.points));
	const double step = (grid.hi - grid.lo) / (grid.points - 1);
	for (int i = 0; i < grid.points; ++i) {
		axis[static_cast<std::size_t>(i)] = i + 1 == grid.points ? grid.hi : grid.lo + i * step;
	}
	return axis;
}

void check_grid(const ValidationGrid &grid) {
	if (grid.points < 3 || !std::isfinite(grid.lo) || !std::isfinite(grid.hi) || !(grid.hi > grid.lo)) {
		throw InputError("validation grid needs finite extents lo < hi and at least 3 points per axis");
	}
}

ValidationCheck convex_in_z_check(const MultiplicativeScore &score, const std::vector<double> &axis,
                                  bool applicable) {
	CheckBuilder c("score_convex_in_z", applicable);
	for (std::size_t k = 0; k < axis.size() && c.check.passed; ++k) {
		const double x = axis[k];
		for (std::size_t i = 0; i < axis.size() && c.check.passed; ++i) {
			for (std::size_t j = i + 2; j < axis.size(); ++j) {
				const double z1 = axis[i];
				const double z2 = axis[j];
				const double avg = 0.5 * (score(z1, x) + score(z2, x));
				const double mid = score(0.5 * (z1 + z2), x);
				if (mid > avg + kAbsTol * (1.0 + std::abs(avg))) {
					c.fail(fmt_point("midpoint above chord:", {{"z1", z1}, {"z2", z2}, {"x", x}, {"S_mid", mid}, {"chord", avg}}));
					break;
				}
			}
		}
	}
	return c.check;
}

} // namespace

bool ValidationReport::passed() const noexcept {
	for (const auto &c : checks) {
		if (c.applicable && !c.passed) {
			return false;
		}
	}
	return true;
}

const ValidationCheck *ValidationReport::find(const std::string &name) const noexcept {
	for (const auto &c : checks) {
		if (c.name == name) {
			return &c;
		}
	}
	return nullptr;
}

bool sampled_convex_in_z(const MultiplicativeScore &score, const ValidationGrid &grid) {
	check_grid(grid);
	return convex_in_z_check(score, make_axis(grid), true).passed;
}

ValidationReport validate(const MultiplicativeScore &score, const ValidationGrid &grid) {
	check_grid(grid);
	const auto axis = make_axis(grid);
	const double spacing = (grid.hi - grid.lo) / (grid.points - 1);
	const auto &phi = score.phi();
	const auto &mu = score.mu();

	std::vector<double> radii; // positive arguments of phi
	for (int i = 1; i < 2 * grid.points; ++i) {
		radii.push_back(i * spacing);
	}

	ValidationReport report;

	{
		CheckBuilder c("phi_zero");
		const double v = phi(0.0);
		if (v != 0.0) {
			c.fail(fmt_point("phi(0) != 0:", {{"phi(0)", v}}));
		}
		report.checks.push_back(c.check);
	}
	{
		CheckBuilder c("phi_positive");
		for (double t : radii) {
			if (!(phi(t) > 0.0)) {
				c.fail(fmt_point("phi(t) not positive:", {{"t", t}, {"phi", phi(t)}}));
				break;
			}
		}
		report.checks.push_back(c.check);
	}
	{
		CheckBuilder c("phi_nondecreasing");
		double prev = phi(0.0);
		for (double t : radii) {
			const double v = phi(t);
			if (v < prev - kAbsTol * (1.0 + std::abs(prev))) {
				c.fail(fmt_point("phi decreases:", {{"t", t}, {"phi", v}, {"previous", prev}}));
				break;
			}
			prev = v;
		}
		report.checks.push_back(c.check);
	}
	{
		CheckBuilder c("phi_convex");
		for (std::size_t i = 0; i < radii.size() && c.check.passed; ++i) {
			for (std::size_t j = i + 2; j < radii.size(); ++j) {
				const double a = radii[i];
				const double b = radii[j];
				const double avg = 0.5 * (phi(a) + phi(b));
				const double mid = phi(0.5 * (a + b));
				if (mid > avg + kAbsTol * (1.0 + std::abs(avg))) {
					c.fail(fmt_point("midpoint above chord:", {{"a", a}, {"b", b}, {"phi_mid", mid}, {"chord", avg}}));
					break;
				}
			}
		}
		report.checks.push_back(c.check);
	}
	{
		const auto &q = phi.homogeneity_degree();
		CheckBuilder c("phi_homogeneous", q.has_value());
		if (q) {
			for (double lambda : grid.scales) {
				for (double t : radii) {
					const double lhs = phi(lambda * t);
					const double rhs = std::pow(lambda, *q) * phi(t);
					if (std::abs(lhs - rhs) > kRelTol * std::abs(rhs) + kAbsTol) {
						c.fail(fmt_point("phi(l t) != l^q phi(t):", {{"lambda", lambda}, {"t", t}, {"lhs", lhs}, {"rhs", rhs}}));
					}
				}
			}
		}
		report.checks.push_back(c.check);
	}

	{
		CheckBuilder range("mu_range");
		CheckBuilder diag("mu_diagonal");
		for (double z : axis) {
			for (double x : axis) {
				const double m = mu(z, x);
				if (!(m >= 0.0 && m <= 1.0)) {
					range.fail(fmt_point("mu outside [0,1]:", {{"z", z}, {"x", x}, {"mu", m}}));
				}
				if (z == x && m != 0.0) {
					diag.fail(fmt_point("mu(z,z) != 0:", {{"z", z}, {"mu", m}}));
				} else if (z != x && !(m > 0.0)) {
					diag.fail(fmt_point("mu vanishes off the diagonal:", {{"z", z}, {"x", x}, {"mu", m}}));
				}
			}
		}
		report.checks.push_back(range.check);
		report.checks.push_back(diag.check);
	}

	const auto accuracy_rewarding = [&](const std::string &name, const auto &f) {
		CheckBuilder c(name);
		for (double x : axis) {
			// Walk away from x in both directions; f must not decrease.
			double prev_up = f(x, x);
			double prev_down = prev_up;
			for (double step : radii) {
				const double up = f(x + step, x);
				const double down = f(x - step, x);
				if (up < prev_up - kAbsTol * (1.0 + std::abs(prev_up))) {
					c.fail(fmt_point("decreases for z > x:", {{"x", x}, {"z", x + step}, {"value", up}, {"previous", prev_up}}));
				}
				if (down < prev_down - kAbsTol * (1.0 + std::abs(prev_down))) {
					c.fail(fmt_point("decreases as z moves below x:", {{"x", x}, {"z", x - step}, {"value", down}, {"previous", prev_down}}));
				}
				prev_up = up;
				prev_down = down;
			}
		}
		report.checks.push_back(c.check);
	};
	accuracy_rewarding("mu_accuracy_rewarding", [&](double z, double x) { return mu(z, x); });

	{
		CheckBuilder c("mu_translation_compatible", mu.translation_compatible());
		if (mu.translation_compatible()) {
			for (double z : axis) {
				for (double x : axis) {
					for (double shift : grid.shifts) {
						// Rounding can move one side onto the diagonal but not the other.
						if (std::abs(x + shift - z) <= 1e-9 * (1.0 + std::abs(z))) {
							continue;
						}
						const double lhs = mu(z, x + shift);
						const double rhs = mu(z - shift, x);
						if (std::abs(lhs - rhs) > kAbsTol) {
							c.fail(fmt_point("mu(z,x+c) != mu(z-c,x):", {{"z", z}, {"x", x}, {"c", shift}, {"lhs", lhs}, {"rhs", rhs}}));
						}
					}
				}
			}
		}
		report.checks.push_back(c.check);
	}
	{
		CheckBuilder c("mu_scale_invariant", mu.scale_invariant());
		if (mu.scale_invariant()) {
			for (double z : axis) {
				for (double x : axis) {
					for (double lambda : grid.scales) {
						const double lhs = mu(lambda * z, lambda * x);
						const double rhs = mu(z, x);
						if (std::abs(lhs - rhs) > kAbsTol) {
							c.fail(fmt_point("mu(l z,l x) != mu(z,x):", {{"z", z}, {"x", x}, {"lambda", lambda}, {"lhs", lhs}, {"rhs", rhs}}));
						}
					}
				}
			}
		}
		report.checks.push_back(c.check);
	}

	{
		CheckBuilder c("score_diagonal");
		for (double z : axis) {
			for (double x : axis) {
				const double s = score(z, x);
				if (z == x && s != 0.0) {
					c.fail(fmt_point("S(z,z) != 0:", {{"z", z}, {"S", s}}));
				} else if (z != x && !(s > 0.0)) {
					c.fail(fmt_point("S vanishes off the diagonal:", {{"z", z}, {"x", x}, {"S", s}}));
				}
			}
		}
		report.checks.push_back(c.check);
	}
	accuracy_rewarding("score_accuracy_rewarding", [&](double z, double x) { return score(z, x); });

	{
		const auto &p = score.homogeneity_degree();
		CheckBuilder c("score_homogeneous", p.has_value());
		if (p) {
			for (double lambda : grid.scales) {
				for (double z : axis) {
					for (double x : axis) {
						const double lhs = score(lambda * z, lambda * x);
						const double rhs = std::pow(lambda, *p) * score(z, x);
						if (std::abs(lhs - rhs) > kRelTol * std::abs(rhs) + kAbsTol) {
							c.fail(fmt_point("S(l z,l x) != l^p S(z,x):", {{"lambda", lambda}, {"z", z}, {"x", x}, {"lhs", lhs}, {"rhs", rhs}}));
						}
					}
				}
			}
		}
		report.checks.push_back(c.check);
	}
	if (score.convex_in_z()) {
		report.checks.push_back(convex_in_z_check(score, axis, true));
	} else {
		report.checks.push_back(CheckBuilder("score_convex_in_z", false).check);
	}

	return report;
}

} // namespace elicit
