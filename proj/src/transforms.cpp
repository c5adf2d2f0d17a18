#include "elicit/transforms.hpp"

#include "elicit/catalogue.hpp"
#include "elicit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace elicit {

namespace {

double checked(double v, const char *what) {
	if (!std::isfinite(v)) {
		throw DomainError(std::string(what) + " produced a non-finite value");
	}
	return v;
}

double int_pow(double x, int k) {
	double out = 1.0;
	for (int i = 0; i < k; ++i) {
		out *= x;
	}
	return out;
}

} // namespace

void check_transform(const TransformSpec &t) {
	switch (t.kind) {
	case TransformSpec::Kind::identity:
		return;
	case TransformSpec::Kind::power:
		if (t.k < 1) {
			throw InputError("power transform needs an integer k >= 1");
		}
		return;
	case TransformSpec::Kind::exp:
	case TransformSpec::Kind::log_scaled:
		if (!(std::isfinite(t.gamma) && t.gamma > 0.0)) {
			throw InputError("exp/log_scaled transform needs gamma > 0");
		}
		return;
	case TransformSpec::Kind::affine:
		if (!(std::isfinite(t.a) && std::isfinite(t.b) && t.a != 0.0)) {
			throw InputError("affine transform needs finite a != 0 and finite b");
		}
		return;
	}
}

double apply(const TransformSpec &t, double x) {
	switch (t.kind) {
	case TransformSpec::Kind::identity:
		return x;
	case TransformSpec::Kind::power:
		return checked(int_pow(x, t.k), "power transform");
	case TransformSpec::Kind::exp:
		return checked(std::exp(t.gamma * x), "exp transform");
	case TransformSpec::Kind::affine:
		return checked(t.a * x + t.b, "affine transform");
	case TransformSpec::Kind::log_scaled:
		if (!(x > 0.0)) {
			throw DomainError("log_scaled transform is undefined at x <= 0");
		}
		return checked(std::log(x) / t.gamma, "log_scaled transform");
	}
	throw DomainError("unknown transform");
}

double invert(const TransformSpec &t, double y) {
	switch (t.kind) {
	case TransformSpec::Kind::identity:
		return y;
	case TransformSpec::Kind::power:
		if (t.k % 2 == 0) {
			if (y < 0.0) {
				throw DomainError("even power has no real inverse at y < 0");
			}
			return std::pow(y, 1.0 / t.k);
		}
		return std::copysign(std::pow(std::abs(y), 1.0 / t.k), y);
	case TransformSpec::Kind::exp:
		if (!(y > 0.0)) {
			throw DomainError("exp transform has no inverse at y <= 0");
		}
		return std::log(y) / t.gamma;
	case TransformSpec::Kind::affine:
		return (y - t.b) / t.a;
	case TransformSpec::Kind::log_scaled:
		return checked(std::exp(t.gamma * y), "log_scaled inverse");
	}
	throw DomainError("unknown transform");
}

bool is_increasing(const TransformSpec &t) {
	switch (t.kind) {
	case TransformSpec::Kind::power:
		return t.k % 2 == 1;
	case TransformSpec::Kind::affine:
		return t.a > 0.0;
	default:
		return true;
	}
}

std::function<double(double)> as_function(const TransformSpec &t) {
	return [t](double x) { return apply(t, x); };
}

ArgminInterval elicit_transformed(const MeasureSpec &spec, const TransformSpec &ell, const WeightedSample &s) {
	check_transform(ell);
	return solve(build(spec), s.transform(as_function(ell)), spec.solver);
}

OsbandResult elicit_osband(const MeasureSpec &spec, const TransformSpec &ell, const TransformSpec &g,
                           const WeightedSample &s) {
	check_transform(g);
	OsbandResult out;
	out.base = elicit_transformed(spec, ell, s);
	if (g.kind == TransformSpec::Kind::power && g.k % 2 == 0 && out.base.lo < 0.0 && out.base.hi > 0.0) {
		throw DomainError("even power Osband map is not monotone across the argmin interval");
	}
	const double a = apply(g, out.base.lo);
	const double b = apply(g, out.base.hi);
	out.lo = std::min(a, b);
	out.hi = std::max(a, b);
	return out;
}

OsbandResult elicit(const MeasureSpec &spec, const WeightedSample &s) {
	return elicit_osband(spec, spec.transform.value_or(TransformSpec{}), spec.osband.value_or(TransformSpec{}), s);
}

std::vector<double> apply(const JointMapSpec &g, const std::vector<double> &z) {
	if (g.kind == JointMapSpec::Kind::mean_variance) {
		if (z.size() != 2) {
			throw InputError("mean_variance map needs exactly two components");
		}
		return {z[0], z[1] - z[0] * z[0]};
	}
	if (g.maps.size() != z.size()) {
		throw InputError("componentwise map needs one transform per component");
	}
	std::vector<double> out(z.size());
	for (std::size_t i = 0; i < z.size(); ++i) {
		check_transform(g.maps[i]);
		out[i] = apply(g.maps[i], z[i]);
	}
	return out;
}

std::vector<double> invert(const JointMapSpec &g, const std::vector<double> &y) {
	if (g.kind == JointMapSpec::Kind::mean_variance) {
		if (y.size() != 2) {
			throw InputError("mean_variance map needs exactly two components");
		}
		return {y[0], y[1] + y[0] * y[0]};
	}
	if (g.maps.size() != y.size()) {
		throw InputError("componentwise map needs one transform per component");
	}
	std::vector<double> out(y.size());
	for (std::size_t i = 0; i < y.size(); ++i) {
		out[i] = invert(g.maps[i], y[i]);
	}
	return out;
}

JointResult elicit_joint(const MeasureSpec &spec, const WeightedSample &s) {
	if (!spec.is_joint()) {
		throw InputError("spec has no 'joint' components");
	}
	JointResult out;
	std::vector<double> lows;
	for (const auto &c : spec.joint) {
		const auto r = elicit(c, s);
		out.components.push_back(r.base);
		lows.push_back(r.lo);
	}
	out.values = spec.joint_map ? elicit::apply(*spec.joint_map, lows) : lows;
	return out;
}

} // namespace elicit
