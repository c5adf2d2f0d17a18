#include "elicit/errors.hpp"
#include "elicit/spec.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace elicit {

namespace {

using nlohmann::json;

class Parser {
public:
	explicit Parser(std::string source) : source_(std::move(source)) {}

	[[noreturn]] void fail(const std::string &path, const std::string &message) const {
		throw InputError(source_ + ": " + path + ": " + message);
	}

	void expect_object(const json &j, const std::string &path) const {
		if (!j.is_object()) {
			fail(path, "expected a JSON object");
		}
	}

	void allow_keys(const json &j, const std::string &path, std::initializer_list<const char *> keys) const {
		const std::set<std::string> allowed(keys.begin(), keys.end());
		for (const auto &[key, _] : j.items()) {
			if (!allowed.count(key)) {
				fail(path + "." + key, "unknown key '" + key + "'");
			}
		}
	}

	double number(const json &j, const std::string &path, const char *key, double fallback) const {
		if (!j.contains(key)) {
			return fallback;
		}
		const auto &v = j.at(key);
		if (!v.is_number()) {
			fail(path + "." + key, "expected a number");
		}
		const double d = v.get<double>();
		if (!std::isfinite(d)) {
			fail(path + "." + key, "expected a finite number");
		}
		return d;
	}

	int integer(const json &j, const std::string &path, const char *key, int fallback) const {
		if (!j.contains(key)) {
			return fallback;
		}
		const auto &v = j.at(key);
		if (!v.is_number_integer()) {
			fail(path + "." + key, "expected an integer");
		}
		return v.get<int>();
	}

	std::string kind(const json &j, const std::string &path) const {
		expect_object(j, path);
		if (!j.contains("kind") || !j.at("kind").is_string()) {
			fail(path + ".kind", "missing or non-string 'kind'");
		}
		return j.at("kind").get<std::string>();
	}

	PhiSpec phi(const json &j, const std::string &path) const {
		const auto k = kind(j, path);
		PhiSpec out;
		if (k == "power") {
			allow_keys(j, path, {"kind", "p"});
			out.kind = PhiSpec::Kind::power;
			out.p = number(j, path, "p", 1.0);
		} else if (k == "exp" || k == "exp_normalized" || k == "exp_integral") {
			allow_keys(j, path, {"kind", "beta"});
			out.kind = k == "exp" ? PhiSpec::Kind::exp
			           : k == "exp_normalized" ? PhiSpec::Kind::exp_normalized
			                                   : PhiSpec::Kind::exp_integral;
			out.beta = number(j, path, "beta", 1.0);
		} else {
			fail(path + ".kind", "unknown phi kind '" + k + "'");
		}
		return out;
	}

	LambdaSpec lambda(const json &j, const std::string &path) const {
		expect_object(j, path);
		allow_keys(j, path, {"breakpoints"});
		if (!j.contains("breakpoints") || !j.at("breakpoints").is_array()) {
			fail(path + ".breakpoints", "expected an array of [z, level] pairs");
		}
		LambdaSpec out;
		const auto &arr = j.at("breakpoints");
		for (std::size_t i = 0; i < arr.size(); ++i) {
			const auto &bp = arr[i];
			const std::string p = path + ".breakpoints[" + std::to_string(i) + "]";
			if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() || !bp[1].is_number()) {
				fail(p, "expected a [z, level] pair of numbers");
			}
			out.breakpoints.emplace_back(bp[0].get<double>(), bp[1].get<double>());
		}
		return out;
	}

	LossSpec loss(const json &j, const std::string &path) const {
		const auto k = kind(j, path);
		LossSpec out;
		if (k == "exponential") {
			allow_keys(j, path, {"kind", "beta"});
			out.kind = LossSpec::Kind::exponential;
			out.beta = number(j, path, "beta", 1.0);
		} else if (k == "piecewise_linear") {
			allow_keys(j, path, {"kind", "a", "b"});
			out.kind = LossSpec::Kind::piecewise_linear;
			out.a = number(j, path, "a", 1.0);
			out.b = number(j, path, "b", 1.0);
		} else {
			fail(path + ".kind", "unknown loss kind '" + k + "'");
		}
		return out;
	}

	MuSpec mu(const json &j, const std::string &path) const {
		const auto k = kind(j, path);
		MuSpec out;
		if (k == "mean") {
			allow_keys(j, path, {"kind"});
			out.kind = MuSpec::Kind::mean;
		} else if (k == "var") {
			allow_keys(j, path, {"kind", "alpha"});
			out.kind = MuSpec::Kind::var;
			out.alpha = number(j, path, "alpha", 0.5);
		} else if (k == "genq") {
			allow_keys(j, path, {"kind", "alpha", "phi1", "phi2"});
			out.kind = MuSpec::Kind::genq;
			out.alpha = number(j, path, "alpha", 0.5);
			out.phi1 = required_phi(j, path, "phi1");
			out.phi2 = required_phi(j, path, "phi2");
		} else if (k == "lambda") {
			allow_keys(j, path, {"kind", "lambda"});
			out.kind = MuSpec::Kind::lambda;
			if (!j.contains("lambda")) {
				fail(path + ".lambda", "missing 'lambda'");
			}
			out.lambda = lambda(j.at("lambda"), path + ".lambda");
		} else if (k == "shortfall") {
			allow_keys(j, path, {"kind", "loss", "psi"});
			out.kind = MuSpec::Kind::shortfall;
			if (!j.contains("loss")) {
				fail(path + ".loss", "missing 'loss'");
			}
			out.loss = loss(j.at("loss"), path + ".loss");
			out.psi = number(j, path, "psi", 1.0);
		} else {
			fail(path + ".kind", "unknown mu kind '" + k + "'");
		}
		return out;
	}

	PhiSpec required_phi(const json &j, const std::string &path, const char *key) const {
		if (!j.contains(key)) {
			fail(path + "." + key, std::string("missing '") + key + "'");
		}
		return phi(j.at(key), path + "." + key);
	}

	TransformSpec transform(const json &j, const std::string &path) const {
		const auto k = kind(j, path);
		TransformSpec out;
		if (k == "identity") {
			allow_keys(j, path, {"kind"});
			out.kind = TransformSpec::Kind::identity;
		} else if (k == "power") {
			allow_keys(j, path, {"kind", "k"});
			out.kind = TransformSpec::Kind::power;
			out.k = integer(j, path, "k", 1);
		} else if (k == "exp" || k == "log_scaled") {
			allow_keys(j, path, {"kind", "gamma"});
			out.kind = k == "exp" ? TransformSpec::Kind::exp : TransformSpec::Kind::log_scaled;
			out.gamma = number(j, path, "gamma", 1.0);
		} else if (k == "affine") {
			allow_keys(j, path, {"kind", "a", "b"});
			out.kind = TransformSpec::Kind::affine;
			out.a = number(j, path, "a", 1.0);
			out.b = number(j, path, "b", 0.0);
		} else {
			fail(path + ".kind", "unknown transform kind '" + k + "'");
		}
		return out;
	}

	JointMapSpec joint_map(const json &j, const std::string &path) const {
		const auto k = kind(j, path);
		JointMapSpec out;
		if (k == "mean_variance") {
			allow_keys(j, path, {"kind"});
			out.kind = JointMapSpec::Kind::mean_variance;
		} else if (k == "componentwise") {
			allow_keys(j, path, {"kind", "maps"});
			out.kind = JointMapSpec::Kind::componentwise;
			if (!j.contains("maps") || !j.at("maps").is_array()) {
				fail(path + ".maps", "expected an array of transforms");
			}
			const auto &maps = j.at("maps");
			for (std::size_t i = 0; i < maps.size(); ++i) {
				out.maps.push_back(transform(maps[i], path + ".maps[" + std::to_string(i) + "]"));
			}
		} else {
			fail(path + ".kind", "unknown joint map kind '" + k + "'");
		}
		return out;
	}

	SolveOptions solver(const json &j, const std::string &path) const {
		expect_object(j, path);
		allow_keys(j, path, {"tol_z", "max_iter", "grid_points", "method"});
		SolveOptions out;
		out.tol_z = number(j, path, "tol_z", out.tol_z);
		out.max_iter = integer(j, path, "max_iter", out.max_iter);
		out.grid_points = integer(j, path, "grid_points", out.grid_points);
		if (!(out.tol_z >= 0.0)) {
			fail(path + ".tol_z", "must be >= 0");
		}
		if (out.max_iter < 1) {
			fail(path + ".max_iter", "must be >= 1");
		}
		if (out.grid_points < 2) {
			fail(path + ".grid_points", "must be >= 2");
		}
		if (j.contains("method")) {
			const auto &m = j.at("method");
			const std::string name = m.is_string() ? m.get<std::string>() : "";
			if (name == "subgradient-bisection") {
				out.method = SolveMethod::subgradient_bisection;
			} else if (name == "golden-section") {
				out.method = SolveMethod::golden_section;
			} else if (name == "grid-refine") {
				out.method = SolveMethod::grid_refine;
			} else {
				fail(path + ".method", "unknown solver method");
			}
		}
		return out;
	}

	MeasureSpec measure(const json &j, const std::string &path, bool allow_joint) const {
		expect_object(j, path);
		allow_keys(j, path,
		           {"name", "alpha", "p", "gamma", "phi1", "phi2", "lambda", "loss", "psi", "phi", "mu", "convex_in_z",
		            "transform", "osband", "joint", "solver"});
		MeasureSpec out;
		if (j.contains("joint")) {
			if (!allow_joint) {
				fail(path + ".joint", "joint specs cannot be nested");
			}
			const auto &arr = j.at("joint");
			if (!arr.is_array() || arr.empty()) {
				fail(path + ".joint", "expected a non-empty array of component specs");
			}
			for (const auto &[key, _] : j.items()) {
				if (key != "joint" && key != "osband" && key != "solver") {
					fail(path + "." + key, "not allowed next to 'joint'");
				}
			}
			for (std::size_t i = 0; i < arr.size(); ++i) {
				out.joint.push_back(measure(arr[i], path + ".joint[" + std::to_string(i) + "]", false));
			}
			if (j.contains("osband")) {
				out.joint_map = joint_map(j.at("osband"), path + ".osband");
			}
			if (j.contains("solver")) {
				out.solver = solver(j.at("solver"), path + ".solver");
				for (auto &c : out.joint) {
					c.solver = out.solver;
				}
			}
			return out;
		}

		if (j.contains("name")) {
			if (!j.at("name").is_string()) {
				fail(path + ".name", "expected a string");
			}
			out.name = j.at("name").get<std::string>();
			if (j.contains("phi") || j.contains("mu")) {
				fail(path, "set either 'name' or the 'phi'/'mu' pair, not both");
			}
			if (j.contains("convex_in_z")) {
				fail(path + ".convex_in_z", "only allowed for custom phi/mu pairs");
			}
		} else if (j.contains("phi") && j.contains("mu")) {
			out.phi = phi(j.at("phi"), path + ".phi");
			out.mu = mu(j.at("mu"), path + ".mu");
			if (j.contains("convex_in_z")) {
				if (!j.at("convex_in_z").is_boolean()) {
					fail(path + ".convex_in_z", "expected a boolean");
				}
				out.convex_in_z = j.at("convex_in_z").get<bool>();
			}
		} else {
			fail(path, "needs 'name', the 'phi'/'mu' pair, or 'joint'");
		}

		out.alpha = number(j, path, "alpha", out.alpha);
		out.p = number(j, path, "p", out.p);
		out.gamma = number(j, path, "gamma", out.gamma);
		out.psi = number(j, path, "psi", out.psi);
		if (j.contains("phi1")) {
			out.phi1 = phi(j.at("phi1"), path + ".phi1");
		}
		if (j.contains("phi2")) {
			out.phi2 = phi(j.at("phi2"), path + ".phi2");
		}
		if (j.contains("lambda")) {
			out.lambda = lambda(j.at("lambda"), path + ".lambda");
		}
		if (j.contains("loss")) {
			out.loss = loss(j.at("loss"), path + ".loss");
		}
		if (j.contains("transform")) {
			out.transform = transform(j.at("transform"), path + ".transform");
		}
		if (j.contains("osband")) {
			out.osband = transform(j.at("osband"), path + ".osband");
		}
		if (j.contains("solver")) {
			out.solver = solver(j.at("solver"), path + ".solver");
		}
		return out;
	}

private:
	std::string source_;
};

std::string fmt(double v) {
	std::ostringstream os;
	os.precision(6);
	os << v;
	return os.str();
}

} // namespace

MeasureSpec parse_measure_spec(const std::string &json_text, const std::string &source) {
	json j;
	try {
		j = json::parse(json_text);
	} catch (const json::parse_error &e) {
		throw InputError(source + ": invalid JSON: " + e.what());
	}
	return Parser(source).measure(j, "spec", true);
}

MeasureSpec load_measure_spec(const std::string &path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw InputError(path + ": cannot open spec file");
	}
	std::ostringstream buf;
	buf << in.rdbuf();
	return parse_measure_spec(buf.str(), path);
}

std::string describe(const MeasureSpec &spec) {
	if (spec.is_joint()) {
		std::string out = "joint(";
		for (std::size_t i = 0; i < spec.joint.size(); ++i) {
			out += (i ? "," : "") + describe(spec.joint[i]);
		}
		return out + ")";
	}
	if (!spec.name) {
		return "custom";
	}
	const std::string &n = *spec.name;
	if (n == "var" || n == "expectile" || n == "genq") {
		return n + "(alpha=" + fmt(spec.alpha) + ")";
	}
	if (n == "lp_quantile") {
		return n + "(alpha=" + fmt(spec.alpha) + ",p=" + fmt(spec.p) + ")";
	}
	if (n == "entropic") {
		return n + "(gamma=" + fmt(spec.gamma) + ")";
	}
	return n;
}

} // namespace elicit
