#include "elicit/scores.hpp"

#include "elicit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace elicit {

namespace {

double fd_step(double at) {
	static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
	return base * std::max(1.0, std::abs(at));
}

// Second-order one-sided differences.
template <typename F>
double forward_difference(const F &f, double at, double h) {
	return (-3.0 * f(at) + 4.0 * f(at + h) - f(at + 2.0 * h)) / (2.0 * h);
}

template <typename F>
double backward_difference(const F &f, double at, double h) {
	return (3.0 * f(at) - 4.0 * f(at - h) + f(at - 2.0 * h)) / (2.0 * h);
}

} // namespace

YoungFn::YoungFn(Parts parts) : parts_(std::move(parts)) {
	if (!parts_.value) {
		throw InputError("Young function '" + parts_.name + "' has no value callable");
	}
}

double YoungFn::dplus(double t) const {
	if (parts_.dplus) {
		return parts_.dplus(t);
	}
	return forward_difference(parts_.value, t, fd_step(t));
}

double YoungFn::dminus(double t) const {
	if (parts_.dminus) {
		return parts_.dminus(t);
	}
	const double h = std::min(fd_step(t), 0.5 * t);
	if (!(h > 0.0)) {
		return dplus(t);
	}
	return backward_difference(parts_.value, t, h);
}

MuFn::MuFn(Parts parts) : parts_(std::move(parts)) {
	if (!parts_.value) {
		throw InputError("weight function '" + parts_.name + "' has no value callable");
	}
}

double MuFn::dz_plus(double z, double x) const {
	if (parts_.dz_plus) {
		return parts_.dz_plus(z, x);
	}
	double h = fd_step(z);
	if (z < x) {
		h = std::min(h, (x - z) / 3.0);
	}
	return forward_difference([&](double zz) { return parts_.value(zz, x); }, z, h);
}

double MuFn::dz_minus(double z, double x) const {
	if (parts_.dz_minus) {
		return parts_.dz_minus(z, x);
	}
	double h = fd_step(z);
	if (z > x) {
		h = std::min(h, (z - x) / 3.0);
	}
	return backward_difference([&](double zz) { return parts_.value(zz, x); }, z, h);
}

double MuFn::limit_above(double x) const {
	if (parts_.limit_above) {
		return parts_.limit_above(x);
	}
	return parts_.value(x + 1e-9 * std::max(1.0, std::abs(x)), x);
}

double MuFn::limit_below(double x) const {
	if (parts_.limit_below) {
		return parts_.limit_below(x);
	}
	return parts_.value(x - 1e-9 * std::max(1.0, std::abs(x)), x);
}

MultiplicativeScore::MultiplicativeScore(std::string name, YoungFn phi, MuFn mu, Traits traits)
    : name_(std::move(name)), phi_(std::move(phi)), mu_(std::move(mu)), traits_(std::move(traits)) {
	std::sort(traits_.knots.begin(), traits_.knots.end());
	traits_.knots.erase(std::unique(traits_.knots.begin(), traits_.knots.end()), traits_.knots.end());
}

double MultiplicativeScore::operator()(double z, double x) const {
	if (z == x) {
		return 0.0;
	}
	return phi_(std::abs(x - z)) * mu_(z, x);
}

OneSided MultiplicativeScore::dz(double z, double x) const {
	if (z == x) {
		// S(x + t, x) / t -> phi'(0+) * mu(x+, x), and symmetrically from the left.
		const double slope = phi_.dplus(0.0);
		if (slope == 0.0) {
			return {0.0, 0.0};
		}
		return {-slope * mu_.limit_below(x), slope * mu_.limit_above(x)};
	}
	const double m = mu_(z, x);
	if (z < x) {
		// |x - z| shrinks as z grows.
		const double t = x - z;
		const double p = phi_(t);
		return {-phi_.dplus(t) * m + p * mu_.dz_minus(z, x), -phi_.dminus(t) * m + p * mu_.dz_plus(z, x)};
	}
	const double t = z - x;
	const double p = phi_(t);
	return {phi_.dminus(t) * m + p * mu_.dz_minus(z, x), phi_.dplus(t) * m + p * mu_.dz_plus(z, x)};
}

OneSided MultiplicativeScore::h(double z, double x) const {
	const auto d = dz(z, x);
	return {-d.left, -d.right};
}

} // namespace elicit
