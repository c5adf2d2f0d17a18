#include "elicit/json_format.hpp"

#include <cmath>
#include <cstdio>

namespace elicit {

namespace {

using nlohmann::json;

void write_string(std::string &out, const std::string &s) {
	// Reuse nlohmann's escaping for strings.
	out += json(s).dump();
}

void write(std::string &out, const json &j, int indent, int depth) {
	const auto newline = [&](int d) {
		if (indent >= 0) {
			out += '\n';
			out.append(static_cast<std::size_t>(indent * d), ' ');
		}
	};
	switch (j.type()) {
	case json::value_t::object: {
		if (j.empty()) {
			out += "{}";
			return;
		}
		out += '{';
		bool first = true;
		for (const auto &[key, value] : j.items()) {
			if (!first) {
				out += ',';
			}
			first = false;
			newline(depth + 1);
			write_string(out, key);
			out += indent >= 0 ? ": " : ":";
			write(out, value, indent, depth + 1);
		}
		newline(depth);
		out += '}';
		return;
	}
	case json::value_t::array: {
		if (j.empty()) {
			out += "[]";
			return;
		}
		out += '[';
		bool first = true;
		for (const auto &value : j) {
			if (!first) {
				out += ',';
			}
			first = false;
			newline(depth + 1);
			write(out, value, indent, depth + 1);
		}
		newline(depth);
		out += ']';
		return;
	}
	case json::value_t::number_float: {
		const double v = j.get<double>();
		if (!std::isfinite(v)) {
			out += "null";
			return;
		}
		char buf[32];
		std::snprintf(buf, sizeof buf, "%.17g", v);
		out += buf;
		return;
	}
	default:
		out += j.dump();
		return;
	}
}

json optional_number(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

} // namespace

std::string dump_json(const json &j, int indent) {
	std::string out;
	write(out, j, indent, 0);
	return out;
}

json to_json(const ArgminInterval &r) {
	return json{{"lo", r.lo},
	            {"hi", r.hi},
	            {"expected_score", r.expected_score_at_min},
	            {"foc_residual", r.foc_residual},
	            {"method", std::string(to_string(r.method))},
	            {"warnings", r.warnings}};
}

json to_json(const ValidationReport &r) {
	json checks = json::array();
	for (const auto &c : r.checks) {
		checks.push_back({{"name", c.name},
		                  {"applicable", c.applicable},
		                  {"passed", c.passed},
		                  {"counterexample", c.counterexample.empty() ? json(nullptr) : json(c.counterexample)}});
	}
	return json{{"passed", r.passed()}, {"checks", checks}};
}

json to_json(const PropertyReport &r) {
	json failures = json::array();
	for (const auto &f : r.failures) {
		json atoms = json::array();
		for (const auto &a : f.instance) {
			atoms.push_back(json::array({a.x, a.y, a.weight}));
		}
		failures.push_back({{"trial", f.trial},
		                    {"seed", f.seed},
		                    {"side", f.side},
		                    {"parameter", f.parameter},
		                    {"atoms", atoms},
		                    {"lhs", f.lhs},
		                    {"rhs", f.rhs},
		                    {"gap", f.gap}});
	}
	return json{{"property", std::string(to_string(r.property))},
	            {"family", std::string(to_string(r.family))},
	            {"trials", r.trials},
	            {"inconclusive", r.inconclusive},
	            {"nondifferentiable_trials", r.nondifferentiable_trials},
	            {"tolerance", r.tolerance},
	            {"verdict", std::string(r.verdict())},
	            {"failures", failures}};
}

json to_json(const HypothesisReport &r) {
	json checks = json::array();
	for (const auto &c : r.checks) {
		checks.push_back({{"name", c.name},
		                  {"passed", c.passed},
		                  {"counterexample", c.counterexample.empty() ? json(nullptr) : json(c.counterexample)}});
	}
	return json{{"checks", checks}, {"estimated_p", optional_number(r.estimated_p)}};
}

json to_json(const HypothesisAlignment &a) {
	return json{{"property", std::string(to_string(a.property))},
	            {"hypothesis", a.hypothesis},
	            {"property_counterexample", a.property_counterexample},
	            {"hypothesis_passed", a.hypothesis_passed},
	            {"consistent", a.consistent}};
}

json to_json(const RepresentationRow &row) {
	return json{{"z", row.z},
	            {"F", row.F},
	            {"gplus", optional_number(row.gplus)},
	            {"gminus", optional_number(row.gminus)},
	            {"ratio", optional_number(row.ratio)}};
}

} // namespace elicit
