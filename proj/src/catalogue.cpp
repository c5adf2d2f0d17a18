#include "elicit/catalogue.hpp"

#include "elicit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace elicit {

namespace {

void require(bool ok, const std::string &message) {
	if (!ok) {
		throw InputError(message);
	}
}

void check_alpha(double alpha, const char *what = "alpha") {
	require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, std::string(what) + " must lie in (0,1)");
}

// ---------------------------------------------------------------------------
// Young functions

YoungFn power_phi(double p) {
	require(std::isfinite(p) && p >= 1.0, "power phi needs p >= 1");
	YoungFn::Parts parts;
	parts.name = "power";
	parts.homogeneity_degree = p;
	if (p == 1.0) {
		parts.value = [](double t) { return t; };
		parts.dplus = [](double) { return 1.0; };
		parts.dminus = [](double) { return 1.0; };
	} else if (p == 2.0) {
		parts.value = [](double t) { return t * t; };
		parts.dplus = [](double t) { return 2.0 * t; };
		parts.dminus = parts.dplus;
	} else {
		parts.value = [p](double t) { return std::pow(t, p); };
		parts.dplus = [p](double t) { return t == 0.0 ? 0.0 : p * std::pow(t, p - 1.0); };
		parts.dminus = parts.dplus;
	}
	return YoungFn(std::move(parts));
}

YoungFn exp_phi(double beta, bool normalized) {
	require(std::isfinite(beta) && beta > 0.0, "exp phi needs beta > 0");
	const double scale = normalized ? 1.0 / std::expm1(beta) : 1.0;
	YoungFn::Parts parts;
	parts.name = normalized ? "exp_normalized" : "exp";
	parts.value = [beta, scale](double t) { return scale * std::expm1(beta * t); };
	parts.dplus = [beta, scale](double t) { return scale * beta * std::exp(beta * t); };
	parts.dminus = parts.dplus;
	return YoungFn(std::move(parts));
}

YoungFn exp_integral_phi(double beta) {
	require(std::isfinite(beta) && beta > 0.0, "exp_integral phi needs beta > 0");
	YoungFn::Parts parts;
	parts.name = "exp_integral";
	parts.value = [beta](double t) { return exp_remainder(beta * t) / beta; };
	parts.dplus = [beta](double t) { return std::expm1(beta * t); };
	parts.dminus = parts.dplus;
	return YoungFn(std::move(parts));
}

// max(alpha phi1, (1 - alpha) phi2) * (1 + t); dominates both and grows faster.
YoungFn genq_envelope(double alpha, const YoungFn &phi1, const YoungFn &phi2) {
	YoungFn::Parts parts;
	parts.name = "genq_envelope";
	const auto a = [=](double t) { return alpha * phi1(t); };
	const auto b = [=](double t) { return (1.0 - alpha) * phi2(t); };
	parts.value = [=](double t) { return std::max(a(t), b(t)) * (1.0 + t); };
	// On ties the max takes the larger slope to the right, the smaller to the left.
	parts.dplus = [=](double t) {
		const double va = a(t);
		const double vb = b(t);
		const double da = alpha * phi1.dplus(t);
		const double db = (1.0 - alpha) * phi2.dplus(t);
		const double slope = va > vb ? da : vb > va ? db : std::max(da, db);
		return slope * (1.0 + t) + std::max(va, vb);
	};
	parts.dminus = [=](double t) {
		const double va = a(t);
		const double vb = b(t);
		const double da = alpha * phi1.dminus(t);
		const double db = (1.0 - alpha) * phi2.dminus(t);
		const double slope = va > vb ? da : vb > va ? db : std::min(da, db);
		return slope * (1.0 + t) + std::max(va, vb);
	};
	return YoungFn(std::move(parts));
}

// ---------------------------------------------------------------------------
// Weight functions

MuFn mean_mu() {
	MuFn::Parts parts;
	parts.name = "mean";
	parts.value = [](double z, double x) { return z == x ? 0.0 : 1.0; };
	parts.dz_plus = [](double, double) { return 0.0; };
	parts.dz_minus = parts.dz_plus;
	parts.limit_above = [](double) { return 1.0; };
	parts.limit_below = parts.limit_above;
	parts.translation_compatible = true;
	parts.scale_invariant = true;
	return MuFn(std::move(parts));
}

MuFn var_mu(double alpha) {
	check_alpha(alpha);
	MuFn::Parts parts;
	parts.name = "var";
	parts.value = [alpha](double z, double x) { return x > z ? alpha : x < z ? 1.0 - alpha : 0.0; };
	parts.dz_plus = [](double, double) { return 0.0; };
	parts.dz_minus = parts.dz_plus;
	parts.limit_above = [alpha](double) { return 1.0 - alpha; };
	parts.limit_below = [alpha](double) { return alpha; };
	parts.translation_compatible = true;
	parts.scale_invariant = true;
	return MuFn(std::move(parts));
}

struct GenqParts {
	double alpha;
	YoungFn phi1;
	YoungFn phi2;
	YoungFn envelope;
};

MuFn genq_mu(const std::shared_ptr<const GenqParts> &g) {
	check_alpha(g->alpha);
	MuFn::Parts parts;
	parts.name = "genq";
	parts.value = [g](double z, double x) {
		if (x > z) {
			const double t = x - z;
			return g->alpha * g->phi1(t) / g->envelope(t);
		}
		if (x < z) {
			const double t = z - x;
			return (1.0 - g->alpha) * g->phi2(t) / g->envelope(t);
		}
		return 0.0;
	};
	// Quotient rule on f(t) = A(t) / Phi(t); t = |x - z| decreases in z below
	// the diagonal and increases above it.
	const auto slope = [g](double z, double x, bool right) {
		if (x == z) {
			return 0.0;
		}
		const bool below = z < x;
		const double t = below ? x - z : z - x;
		const bool t_right = below ? !right : right;
		const double env = g->envelope(t);
		const double denv = t_right ? g->envelope.dplus(t) : g->envelope.dminus(t);
		double num;
		double dnum;
		if (below) {
			num = g->alpha * g->phi1(t);
			dnum = g->alpha * (t_right ? g->phi1.dplus(t) : g->phi1.dminus(t));
		} else {
			num = (1.0 - g->alpha) * g->phi2(t);
			dnum = (1.0 - g->alpha) * (t_right ? g->phi2.dplus(t) : g->phi2.dminus(t));
		}
		const double df = (dnum * env - num * denv) / (env * env);
		return below ? -df : df;
	};
	parts.dz_plus = [slope](double z, double x) { return slope(z, x, true); };
	parts.dz_minus = [slope](double z, double x) { return slope(z, x, false); };
	parts.limit_above = [g](double) {
		const double d = g->envelope.dplus(0.0);
		if (d > 0.0) {
			return (1.0 - g->alpha) * g->phi2.dplus(0.0) / d;
		}
		const double t = 1e-9;
		return (1.0 - g->alpha) * g->phi2(t) / g->envelope(t);
	};
	parts.limit_below = [g](double) {
		const double d = g->envelope.dplus(0.0);
		if (d > 0.0) {
			return g->alpha * g->phi1.dplus(0.0) / d;
		}
		const double t = 1e-9;
		return g->alpha * g->phi1(t) / g->envelope(t);
	};
	parts.translation_compatible = true;
	return MuFn(std::move(parts));
}

std::shared_ptr<const GenqParts> genq_parts(double alpha, const PhiSpec &phi1, const PhiSpec &phi2) {
	check_alpha(alpha);
	auto f1 = make_phi(phi1);
	auto f2 = make_phi(phi2);
	auto env = genq_envelope(alpha, f1, f2);
	return std::make_shared<const GenqParts>(GenqParts{alpha, std::move(f1), std::move(f2), std::move(env)});
}

MuFn lambda_mu(const std::shared_ptr<const LevelFunction> &lam) {
	MuFn::Parts parts;
	parts.name = "lambda";
	parts.value = [lam](double z, double x) {
		if (x > z) {
			return lam->integral(z, x) / (x - z);
		}
		if (x < z) {
			return 1.0 - lam->integral(x, z) / (z - x);
		}
		return 0.0;
	};
	// mu = I/t with I' = -Lambda below the diagonal, mu = 1 - J/t with
	// J' = Lambda above; right derivatives see Lambda(z), left ones Lambda(z-).
	const auto slope = [lam](double z, double x, bool right) {
		const double level = right ? (*lam)(z) : lam->left_limit(z);
		if (x > z) {
			const double t = x - z;
			return (lam->integral(z, x) / t - level) / t;
		}
		if (x < z) {
			const double t = z - x;
			return (lam->integral(x, z) / t - level) / t;
		}
		return 0.0;
	};
	parts.dz_plus = [slope](double z, double x) { return slope(z, x, true); };
	parts.dz_minus = [slope](double z, double x) { return slope(z, x, false); };
	parts.limit_above = [lam](double x) { return 1.0 - (*lam)(x); };
	parts.limit_below = [lam](double x) { return lam->left_limit(x); };
	parts.translation_compatible = lam->is_constant();
	parts.scale_invariant = lam->is_constant();
	return MuFn(std::move(parts));
}

void check_loss(const LossSpec &loss) {
	if (loss.kind == LossSpec::Kind::exponential) {
		require(std::isfinite(loss.beta) && loss.beta > 0.0, "exponential loss needs beta > 0");
	} else {
		require(std::isfinite(loss.a) && loss.a > 0.0 && std::isfinite(loss.b) && loss.b > 0.0,
		        "piecewise_linear loss needs a > 0 and b > 0");
	}
}

// -int_{-x}^0 l / int_0^x l <= psi for x > 0, checked on a grid.
void check_gauge(const LossSpec &loss, double psi) {
	require(std::isfinite(psi) && psi >= 1.0, "shortfall gauge psi must be >= 1");
	for (int i = 1; i <= 400; ++i) {
		const double x = 0.025 * i;
		const double ratio = loss_integral(loss, -x) / loss_integral(loss, x);
		if (ratio > psi * (1.0 + 1e-12)) {
			std::ostringstream msg;
			msg.precision(17);
			msg << "shortfall gauge condition fails at x=" << x << ": ratio " << ratio << " exceeds psi " << psi;
			throw InputError(msg.str());
		}
	}
}

MuFn shortfall_mu(const LossSpec &loss, double psi) {
	check_loss(loss);
	check_gauge(loss, psi);
	MuFn::Parts parts;
	parts.name = "shortfall";
	parts.value = [loss, psi](double z, double x) {
		if (x > z) {
			return 1.0 / psi;
		}
		if (x < z) {
			const double t = z - x;
			return loss_integral(loss, -t) / (psi * loss_integral(loss, t));
		}
		return 0.0;
	};
	const auto slope = [loss, psi](double z, double x) {
		if (!(x < z)) {
			return 0.0;
		}
		const double t = z - x;
		const double lt = loss_integral(loss, t);
		const double lmt = loss_integral(loss, -t);
		return (-loss_value(loss, -t) * lt - lmt * loss_value(loss, t)) / (psi * lt * lt);
	};
	parts.dz_plus = slope;
	parts.dz_minus = slope;
	const double ratio0 = loss.kind == LossSpec::Kind::exponential ? 1.0 : loss.b / loss.a;
	parts.limit_above = [ratio0, psi](double) { return ratio0 / psi; };
	parts.limit_below = [psi](double) { return 1.0 / psi; };
	parts.translation_compatible = true;
	parts.scale_invariant = loss.kind == LossSpec::Kind::piecewise_linear;
	return MuFn(std::move(parts));
}

YoungFn shortfall_phi(const LossSpec &loss, double psi) {
	YoungFn::Parts parts;
	parts.name = "shortfall";
	parts.value = [loss, psi](double t) { return psi * loss_integral(loss, t); };
	parts.dplus = [loss, psi](double t) { return psi * loss_value(loss, t); };
	parts.dminus = parts.dplus;
	if (loss.kind == LossSpec::Kind::piecewise_linear) {
		parts.homogeneity_degree = 2.0;
	}
	return YoungFn(std::move(parts));
}

// ---------------------------------------------------------------------------

bool is_power(const PhiSpec &s) { return s.kind == PhiSpec::Kind::power; }

MultiplicativeScore quantile_type(const std::string &name, double p, double alpha) {
	MultiplicativeScore::Traits traits;
	traits.convex_in_z = true;
	traits.homogeneity_degree = p;
	return MultiplicativeScore(name, power_phi(p), var_mu(alpha), traits);
}

MultiplicativeScore build_genq(const std::string &name, double alpha, const PhiSpec &phi1, const PhiSpec &phi2) {
	const auto g = genq_parts(alpha, phi1, phi2);
	MultiplicativeScore::Traits traits;
	traits.convex_in_z = true;
	if (is_power(phi1) && is_power(phi2) && phi1.p == phi2.p) {
		traits.homogeneity_degree = phi1.p;
	}
	return MultiplicativeScore(name, g->envelope, genq_mu(g), traits);
}

MultiplicativeScore build_lambda(const std::string &name, const LambdaSpec &spec) {
	auto lam = std::make_shared<const LevelFunction>(spec);
	MultiplicativeScore::Traits traits;
	traits.convex_in_z = lam->is_nonincreasing();
	if (lam->is_constant()) {
		traits.homogeneity_degree = 1.0;
	}
	traits.knots = lam->knots();
	return MultiplicativeScore(name, power_phi(1.0), lambda_mu(lam), traits);
}

MultiplicativeScore build_shortfall(const std::string &name, const LossSpec &loss, double psi) {
	auto mu = shortfall_mu(loss, psi);
	MultiplicativeScore::Traits traits;
	traits.convex_in_z = true;
	if (loss.kind == LossSpec::Kind::piecewise_linear) {
		traits.homogeneity_degree = 2.0;
	}
	return MultiplicativeScore(name, shortfall_phi(loss, psi), std::move(mu), traits);
}

MultiplicativeScore build_custom(const MeasureSpec &spec) {
	const auto &ps = *spec.phi;
	const auto &ms = *spec.mu;
	auto phi = make_phi(ps);
	auto mu = make_mu(ms);
	MultiplicativeScore::Traits traits;
	if (ms.kind == MuSpec::Kind::lambda) {
		traits.knots = LevelFunction(ms.lambda).knots();
	}
	if (phi.homogeneity_degree() && mu.scale_invariant()) {
		traits.homogeneity_degree = phi.homogeneity_degree();
	}
	const std::string name = "custom";
	if (spec.convex_in_z) {
		traits.convex_in_z = *spec.convex_in_z;
		return MultiplicativeScore(name, std::move(phi), std::move(mu), traits);
	}
	MultiplicativeScore probe(name, phi, mu, traits);
	traits.convex_in_z = sampled_convex_in_z(probe);
	return MultiplicativeScore(name, std::move(phi), std::move(mu), traits);
}

// Root of a decreasing function on [lo, hi] to 1e-12 in z.
template <typename F>
double bisect_decreasing(const F &f, double lo, double hi) {
	for (int i = 0; i < 400 && hi - lo > 1e-12; ++i) {
		const double mid = lo + 0.5 * (hi - lo);
		if (mid <= lo || mid >= hi) {
			break;
		}
		if (f(mid) > 0.0) {
			lo = mid;
		} else {
			hi = mid;
		}
	}
	return 0.5 * (lo + hi);
}

OracleValue point(double v) { return {v, v}; }

OracleValue quantile_oracle(const WeightedSample &s, double alpha) {
	check_alpha(alpha);
	const double lo = s.quantile(alpha);
	double hi = s.max();
	for (const auto &a : s.atoms()) {
		if (s.cdf(a.value) > alpha) {
			hi = a.value;
			break;
		}
	}
	return {lo, hi};
}

OracleValue power_moment_oracle(const WeightedSample &s, double alpha, double p) {
	check_alpha(alpha);
	if (p == 1.0) {
		return quantile_oracle(s, alpha);
	}
	const auto f = [&](double z) {
		double up = 0.0;
		double down = 0.0;
		for (const auto &a : s.atoms()) {
			if (a.value > z) {
				up += a.weight * std::pow(a.value - z, p - 1.0);
			} else if (a.value < z) {
				down += a.weight * std::pow(z - a.value, p - 1.0);
			}
		}
		return alpha * up - (1.0 - alpha) * down;
	};
	return point(bisect_decreasing(f, s.min(), s.max()));
}

OracleValue lambda_oracle(const WeightedSample &s, const LambdaSpec &spec) {
	const LevelFunction lam(spec);
	std::vector<double> candidates;
	for (const auto &a : s.atoms()) {
		candidates.push_back(a.value);
	}
	for (double k : lam.knots()) {
		if (k > s.min() && k < s.max()) {
			candidates.push_back(k);
		}
	}
	std::sort(candidates.begin(), candidates.end());
	OracleValue out{s.max(), s.max()};
	bool have_lo = false;
	for (double c : candidates) {
		const double F = s.cdf(c);
		if (!have_lo && F >= lam(c)) {
			out.lo = c;
			have_lo = true;
		}
		if (F > lam(c)) {
			out.hi = c;
			break;
		}
	}
	return out;
}

OracleValue entropic_oracle(const WeightedSample &s, double gamma) {
	require(std::isfinite(gamma) && gamma > 0.0, "entropic gamma must be > 0");
	const double m = s.max();
	double total = 0.0;
	for (const auto &a : s.atoms()) {
		total += a.weight * std::exp(gamma * (a.value - m));
	}
	return point(m + std::log(total) / gamma);
}

OracleValue shortfall_oracle(const WeightedSample &s, const LossSpec &loss) {
	check_loss(loss);
	const auto f = [&](double z) {
		double total = 0.0;
		for (const auto &a : s.atoms()) {
			total += a.weight * loss_value(loss, a.value - z);
		}
		return total;
	};
	return point(bisect_decreasing(f, s.min(), s.max()));
}

} // namespace

// ---------------------------------------------------------------------------

LevelFunction::LevelFunction(LambdaSpec spec) : breakpoints_(std::move(spec.breakpoints)) {
	require(!breakpoints_.empty(), "lambda needs at least one breakpoint");
	for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
		const auto [z, level] = breakpoints_[i];
		require(std::isfinite(z), "lambda breakpoints must be finite");
		require(std::isfinite(level) && level > 0.0 && level < 1.0, "lambda levels must lie in (0,1)");
		require(i == 0 || z > breakpoints_[i - 1].first, "lambda breakpoints must be strictly increasing");
	}
}

double LevelFunction::operator()(double z) const noexcept {
	// Last breakpoint <= z; the first level extends to the left.
	const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), z,
	                                 [](double v, const auto &bp) { return v < bp.first; });
	return it == breakpoints_.begin() ? breakpoints_.front().second : std::prev(it)->second;
}

double LevelFunction::left_limit(double z) const noexcept {
	const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), z,
	                                 [](const auto &bp, double v) { return bp.first < v; });
	return it == breakpoints_.begin() ? breakpoints_.front().second : std::prev(it)->second;
}

double LevelFunction::integral(double a, double b) const noexcept {
	if (!(b > a)) {
		return 0.0;
	}
	double total = 0.0;
	const std::size_t n = breakpoints_.size();
	for (std::size_t i = 0; i < n; ++i) {
		const double seg_lo = i == 0 ? -INFINITY : breakpoints_[i].first;
		const double seg_hi = i + 1 < n ? breakpoints_[i + 1].first : INFINITY;
		const double lo = std::max(a, seg_lo);
		const double hi = std::min(b, seg_hi);
		if (hi > lo) {
			total += breakpoints_[i].second * (hi - lo);
		}
	}
	return total;
}

bool LevelFunction::is_constant() const noexcept {
	return std::all_of(breakpoints_.begin(), breakpoints_.end(),
	                   [&](const auto &bp) { return bp.second == breakpoints_.front().second; });
}

bool LevelFunction::is_nonincreasing() const noexcept {
	for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
		if (breakpoints_[i].second > breakpoints_[i - 1].second) {
			return false;
		}
	}
	return true;
}

std::vector<double> LevelFunction::knots() const {
	std::vector<double> out;
	for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
		out.push_back(breakpoints_[i].first);
	}
	return out;
}

double exp_remainder(double u) noexcept {
	if (std::abs(u) < 1e-2) {
		// Taylor series through u^7; the truncation error is below 1e-16 relative.
		return u * u * (1.0 / 2 + u * (1.0 / 6 + u * (1.0 / 24 + u * (1.0 / 120 + u * (1.0 / 720 + u / 5040)))));
	}
	return std::expm1(u) - u;
}

double loss_value(const LossSpec &loss, double y) {
	if (loss.kind == LossSpec::Kind::exponential) {
		return std::expm1(loss.beta * y);
	}
	return y >= 0.0 ? loss.a * y : loss.b * y;
}

double loss_integral(const LossSpec &loss, double x) {
	if (loss.kind == LossSpec::Kind::exponential) {
		return exp_remainder(loss.beta * x) / loss.beta;
	}
	return 0.5 * (x >= 0.0 ? loss.a : loss.b) * x * x;
}

YoungFn make_phi(const PhiSpec &spec) {
	switch (spec.kind) {
	case PhiSpec::Kind::power:
		return power_phi(spec.p);
	case PhiSpec::Kind::exp:
		return exp_phi(spec.beta, false);
	case PhiSpec::Kind::exp_normalized:
		return exp_phi(spec.beta, true);
	case PhiSpec::Kind::exp_integral:
		return exp_integral_phi(spec.beta);
	}
	throw InputError("unknown phi kind");
}

MuFn make_mu(const MuSpec &spec) {
	switch (spec.kind) {
	case MuSpec::Kind::mean:
		return mean_mu();
	case MuSpec::Kind::var:
		return var_mu(spec.alpha);
	case MuSpec::Kind::genq:
		return genq_mu(genq_parts(spec.alpha, spec.phi1, spec.phi2));
	case MuSpec::Kind::lambda:
		return lambda_mu(std::make_shared<const LevelFunction>(spec.lambda));
	case MuSpec::Kind::shortfall:
		return shortfall_mu(spec.loss, spec.psi);
	}
	throw InputError("unknown mu kind");
}

const std::vector<std::string> &catalogue_names() {
	static const std::vector<std::string> names{"mean",       "var",      "expectile", "lp_quantile",
	                                            "genq",       "lambda_var", "entropic", "shortfall"};
	return names;
}

MultiplicativeScore build(const MeasureSpec &spec) {
	if (spec.is_joint()) {
		throw InputError("a joint spec has no single score; build its components instead");
	}
	if (spec.name && (spec.phi || spec.mu)) {
		throw InputError("spec sets both 'name' and a phi/mu pair");
	}
	if (!spec.name) {
		if (!spec.phi || !spec.mu) {
			throw InputError("spec needs either 'name' or both 'phi' and 'mu'");
		}
		return build_custom(spec);
	}
	const std::string &name = *spec.name;
	if (name == "mean") {
		MultiplicativeScore::Traits traits;
		traits.convex_in_z = true;
		traits.homogeneity_degree = 2.0;
		return MultiplicativeScore(name, power_phi(2.0), mean_mu(), traits);
	}
	if (name == "var") {
		return quantile_type(name, 1.0, spec.alpha);
	}
	if (name == "expectile") {
		return quantile_type(name, 2.0, spec.alpha);
	}
	if (name == "lp_quantile") {
		return quantile_type(name, spec.p, spec.alpha);
	}
	if (name == "genq") {
		return build_genq(name, spec.alpha, spec.phi1, spec.phi2);
	}
	if (name == "lambda_var") {
		return build_lambda(name, spec.lambda);
	}
	if (name == "entropic") {
		require(std::isfinite(spec.gamma) && spec.gamma > 0.0, "entropic gamma must be > 0");
		LossSpec loss;
		loss.kind = LossSpec::Kind::exponential;
		loss.beta = spec.gamma;
		return build_shortfall(name, loss, 1.0);
	}
	if (name == "shortfall") {
		return build_shortfall(name, spec.loss, spec.psi);
	}
	throw InputError("unknown measure name '" + name + "'");
}

OracleValue oracle(const MeasureSpec &spec, const WeightedSample &sample) {
	if (!spec.name) {
		throw InputError("no oracle for a custom phi/mu pair");
	}
	const std::string &name = *spec.name;
	if (name == "mean") {
		return point(sample.mean());
	}
	if (name == "var") {
		return quantile_oracle(sample, spec.alpha);
	}
	if (name == "expectile") {
		return power_moment_oracle(sample, spec.alpha, 2.0);
	}
	if (name == "lp_quantile") {
		require(std::isfinite(spec.p) && spec.p >= 1.0, "lp_quantile needs p >= 1");
		return power_moment_oracle(sample, spec.alpha, spec.p);
	}
	if (name == "lambda_var") {
		return lambda_oracle(sample, spec.lambda);
	}
	if (name == "entropic") {
		return entropic_oracle(sample, spec.gamma);
	}
	if (name == "shortfall") {
		return shortfall_oracle(sample, spec.loss);
	}
	throw InputError("no oracle known for measure '" + name + "'");
}

} // namespace elicit
