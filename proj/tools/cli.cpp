#include "cli.hpp"

#include "elicit/catalogue.hpp"
#include "elicit/csv.hpp"
#include "elicit/errors.hpp"
#include "elicit/json_format.hpp"
#include "elicit/properties.hpp"
#include "elicit/representation.hpp"
#include "elicit/transforms.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace elicit::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Diagnostics on stderr, level from ELICIT_LOG.

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

class Log {
public:
	explicit Log(std::ostream &err) : err_(err) {
		const char *env = std::getenv("ELICIT_LOG");
		const std::string v = env ? env : "";
		if (v == "error") {
			level_ = Level::error;
		} else if (v == "info") {
			level_ = Level::info;
		} else if (v == "debug") {
			level_ = Level::debug;
		} else if (!v.empty() && v != "warn") {
			err_ << "elicit: warn: ignoring unknown ELICIT_LOG value '" << v << "'\n";
		}
	}

	void operator()(Level level, const std::string &msg) const {
		static const char *names[] = {"error", "warn", "info", "debug"};
		if (static_cast<int>(level) <= static_cast<int>(level_)) {
			err_ << "elicit: " << names[static_cast<int>(level)] << ": " << msg << '\n';
		}
	}

private:
	std::ostream &err_;
	Level level_ = Level::warn;
};

// ---------------------------------------------------------------------------
// Output

std::string num(double v) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.10g", v);
	return buf;
}

std::string num(const std::optional<double> &v) { return v ? num(*v) : "-"; }

std::string table(const std::vector<std::vector<std::string>> &rows) {
	std::vector<std::size_t> width;
	for (const auto &r : rows) {
		width.resize(std::max(width.size(), r.size()));
		for (std::size_t i = 0; i < r.size(); ++i) {
			width[i] = std::max(width[i], r[i].size());
		}
	}
	std::string out;
	for (const auto &r : rows) {
		std::string line;
		for (std::size_t i = 0; i < r.size(); ++i) {
			line += r[i];
			if (i + 1 < r.size()) {
				line.append(width[i] - r[i].size() + 2, ' ');
			}
		}
		out += line + '\n';
	}
	return out;
}

struct Output {
	std::ostream &out;
	std::string path;
	bool pretty = false;

	void emit(const json &j, const std::string &pretty_text) const {
		const std::string text = pretty ? pretty_text : dump_json(j) + "\n";
		if (path.empty()) {
			out << text;
			return;
		}
		std::ofstream f(path, std::ios::binary);
		if (!f) {
			throw InputError(path + ": cannot open output file");
		}
		f << text;
	}
};

// ---------------------------------------------------------------------------
// Shared option groups

struct DataArgs {
	std::string data;
	std::string value_column = "value";
	std::string weight_column;

	void add(CLI::App *cmd) {
		cmd->add_option("--data", data, "CSV file with a header row")->required();
		cmd->add_option("--value-column", value_column, "column holding the sample values")->capture_default_str();
		cmd->add_option("--weight-column", weight_column, "optional column of non-negative weights");
	}

	WeightedSample load() const {
		return read_sample_csv(data, value_column,
		                       weight_column.empty() ? std::nullopt : std::optional<std::string>(weight_column));
	}
};

MeasureSpec single_spec(const std::string &path) {
	auto spec = load_measure_spec(path);
	if (spec.is_joint()) {
		throw InputError(path + ": this subcommand needs a single-measure spec, not 'joint'");
	}
	return spec;
}

json interval_json(const MeasureSpec &spec, const ArgminInterval &r) {
	json j = to_json(r);
	j["measure"] = describe(spec);
	return j;
}

std::vector<std::vector<std::string>> interval_rows(const ArgminInterval &r) {
	return {{"lo", num(r.lo)},
	        {"hi", num(r.hi)},
	        {"expected_score", num(r.expected_score_at_min)},
	        {"foc_residual", num(r.foc_residual)},
	        {"method", std::string(to_string(r.method))}};
}

// ---------------------------------------------------------------------------
// Subcommands

void compute(const DataArgs &data, const std::string &spec_path, std::optional<double> tol_z, const Output &output,
             const Log &log) {
	auto spec = load_measure_spec(spec_path);
	const auto sample = data.load();
	log(Level::info, "loaded " + std::to_string(sample.size()) + " distinct atoms from " + data.data);
	if (tol_z) {
		spec.solver.tol_z = *tol_z;
		for (auto &c : spec.joint) {
			c.solver.tol_z = *tol_z;
		}
	}

	if (spec.is_joint()) {
		const auto r = elicit_joint(spec, sample);
		json components = json::array();
		std::vector<std::vector<std::string>> rows{{"component", "measure", "lo", "hi", "value"}};
		for (std::size_t i = 0; i < r.components.size(); ++i) {
			components.push_back(interval_json(spec.joint[i], r.components[i]));
			rows.push_back({std::to_string(i), describe(spec.joint[i]), num(r.components[i].lo),
			                num(r.components[i].hi), num(r.values[i])});
		}
		const json j{{"measure", describe(spec)}, {"values", r.values}, {"components", components}};
		output.emit(j, table(rows));
		return;
	}

	const auto r = elicit(spec, sample);
	for (const auto &w : r.base.warnings) {
		log(Level::warn, w);
	}
	log(Level::debug, "method " + std::string(to_string(r.base.method)));
	json j = interval_json(spec, r.base);
	auto rows = interval_rows(r.base);
	if (spec.osband) {
		j["base"] = json{{"lo", r.base.lo}, {"hi", r.base.hi}};
		j["lo"] = r.lo;
		j["hi"] = r.hi;
		rows[0][1] = num(r.lo);
		rows[1][1] = num(r.hi);
		rows.push_back({"base_lo", num(r.base.lo)});
		rows.push_back({"base_hi", num(r.base.hi)});
	}
	rows.insert(rows.begin(), {"measure", describe(spec)});
	output.emit(j, table(rows));
}

void represent(const DataArgs &data, const std::string &spec_path, int points, const Output &output) {
	const auto spec = single_spec(spec_path);
	if (spec.osband) {
		throw InputError(spec_path + ": represent does not support an Osband map");
	}
	if (points < 1) {
		throw InputError("--points must be >= 1");
	}
	auto sample = data.load();
	if (spec.transform) {
		sample = sample.transform(as_function(*spec.transform));
	}
	const auto score = build(spec);
	json rows = json::array();
	std::vector<std::vector<std::string>> text{{"z", "F", "gplus", "gminus", "ratio"}};
	for (const auto &row : representation_rows(score, sample, points)) {
		rows.push_back(to_json(row));
		text.push_back({num(row.z), num(row.F), num(row.gplus), num(row.gminus), num(row.ratio)});
	}
	output.emit(rows, table(text));
}

std::vector<double> forecast_column(const std::string &arg, const CsvTable &data) {
	namespace fs = std::filesystem;
	std::error_code ec;
	if (fs::is_regular_file(arg, ec)) {
		const auto t = read_csv_table(arg);
		if (t.has_column("value")) {
			return t.column("value");
		}
		if (t.header.size() == 1) {
			return t.columns.front();
		}
		throw InputError(arg + ": forecast file needs a 'value' column or exactly one column");
	}
	if (data.has_column(arg)) {
		return data.column(arg);
	}
	throw InputError("forecast '" + arg + "' is neither a CSV file nor a column of " + data.path);
}

void compare(const std::string &data_path, const std::string &value_column, const std::string &fa,
             const std::string &fb, const std::string &spec_path, const Output &output) {
	const auto spec = single_spec(spec_path);
	const auto table_data = read_csv_table(data_path);
	if (!table_data.has_column(value_column)) {
		throw InputError(data_path + ": no column named '" + value_column + "'");
	}
	const auto &x = table_data.column(value_column);
	const auto a = forecast_column(fa, table_data);
	const auto b = forecast_column(fb, table_data);
	if (a.size() != x.size() || b.size() != x.size()) {
		throw InputError("forecast and realization columns differ in length (" + std::to_string(x.size()) +
		                 " realizations, " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
		                 " forecasts)");
	}
	const auto score = build(spec);
	const TransformSpec ell = spec.transform.value_or(TransformSpec{});
	const TransformSpec g = spec.osband.value_or(TransformSpec{});
	// Forecasts live on the scale of the reported functional: score at g^-1(z).
	const auto mean_score = [&](const std::vector<double> &z) {
		double total = 0.0;
		for (std::size_t i = 0; i < x.size(); ++i) {
			total += score(invert(g, z[i]), apply(ell, x[i]));
		}
		return total / static_cast<double>(x.size());
	};
	const double sa = mean_score(a);
	const double sb = mean_score(b);
	const std::string winner = sa < sb ? "a" : sb < sa ? "b" : "tie";
	const json j{{"measure", describe(spec)},
	             {"n", x.size()},
	             {"mean_score_a", sa},
	             {"mean_score_b", sb},
	             {"diff", sa - sb},
	             {"winner", winner}};
	output.emit(j, table({{"measure", describe(spec)},
	                      {"n", std::to_string(x.size())},
	                      {"mean_score_a", num(sa)},
	                      {"mean_score_b", num(sb)},
	                      {"diff", num(sa - sb)},
	                      {"winner", winner}}));
}

bool properties(const std::string &spec_path, int trials, std::uint64_t seed, double tol,
                const std::vector<std::string> &names, const std::string &family_name, const Output &output,
                const Log &log) {
	const auto spec = single_spec(spec_path);
	const auto family = family_from_string(family_name);
	if (!family) {
		throw InputError("unknown --family '" + family_name + "' (random, two_atom)");
	}
	std::vector<Property> props;
	for (const auto &n : names) {
		const auto p = property_from_string(n);
		if (!p) {
			throw InputError("unknown property '" + n + "'");
		}
		props.push_back(*p);
	}
	if (props.empty()) {
		props = all_properties();
	}

	std::vector<PropertyReport> reports;
	json jr = json::array();
	std::vector<std::vector<std::string>> rows{{"property", "verdict", "trials", "inconclusive", "failures"}};
	bool found = false;
	for (auto p : props) {
		log(Level::info, "checking " + std::string(to_string(p)));
		reports.push_back(check_property(spec, p, trials, seed, tol, *family));
		const auto &r = reports.back();
		found = found || r.counterexample();
		jr.push_back(to_json(r));
		rows.push_back({std::string(to_string(p)), std::string(r.verdict()), std::to_string(r.trials),
		                std::to_string(r.inconclusive), std::to_string(r.failures.size())});
	}
	const auto hyp = check_score_hypotheses(build(spec));
	json alignment = json::array();
	for (const auto &a : align(hyp, reports)) {
		alignment.push_back(to_json(a));
	}
	const json j{{"measure", describe(spec)},
	             {"seed", seed},
	             {"reports", jr},
	             {"hypotheses", to_json(hyp)},
	             {"alignment", alignment}};
	output.emit(j, table(rows));
	return found;
}

void validate_cmd(const std::string &spec_path, const ValidationGrid &grid, const Output &output) {
	const auto spec = single_spec(spec_path);
	const auto report = validate(build(spec), grid);
	json j = to_json(report);
	j["measure"] = describe(spec);
	std::vector<std::vector<std::string>> rows{{"check", "applicable", "passed", "counterexample"}};
	for (const auto &c : report.checks) {
		rows.push_back({c.name, c.applicable ? "yes" : "no", c.passed ? "yes" : "no", c.counterexample});
	}
	output.emit(j, table(rows));
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
	const Log log(err);
	CLI::App app{"Elicitable risk measures from multiplicative scoring functions"};
	app.name("elicit");
	app.require_subcommand(1);

	std::string spec_path;
	std::string out_path;
	bool pretty = false;
	const auto common = [&](CLI::App *cmd) {
		cmd->add_option("--spec", spec_path, "measure spec (JSON)")->required();
		cmd->add_option("--out", out_path, "write output here instead of stdout");
		cmd->add_flag("--pretty", pretty, "print an aligned table instead of JSON");
	};

	DataArgs data;
	std::optional<double> tol_z;
	auto *compute_cmd = app.add_subcommand("compute", "solve for the argmin interval of a measure");
	data.add(compute_cmd);
	common(compute_cmd);
	compute_cmd->add_option("--tol-z", tol_z, "absolute z-tolerance of the solver");

	int points = 200;
	auto *represent_cmd = app.add_subcommand("represent", "tabulate F, G+ and G- over the sample hull");
	data.add(represent_cmd);
	common(represent_cmd);
	represent_cmd->add_option("--points", points, "uniform points inside the hull")->capture_default_str();

	std::string forecast_a;
	std::string forecast_b;
	std::string compare_data;
	std::string compare_value = "value";
	auto *compare_cmd = app.add_subcommand("compare", "rank two forecast sequences by mean score");
	compare_cmd->add_option("--data", compare_data, "CSV of realizations")->required();
	compare_cmd->add_option("--value-column", compare_value, "realization column")->capture_default_str();
	compare_cmd->add_option("--forecast-a", forecast_a, "CSV file or column name")->required();
	compare_cmd->add_option("--forecast-b", forecast_b, "CSV file or column name")->required();
	common(compare_cmd);

	int trials = 1000;
	std::uint64_t seed = 0;
	double tol = 1e-7;
	std::vector<std::string> property_names;
	std::string family = "random";
	bool fail_on_counterexample = false;
	auto *properties_cmd = app.add_subcommand("properties", "randomized checks of risk-measure properties");
	common(properties_cmd);
	properties_cmd->add_option("--trials", trials, "trials per property")->capture_default_str();
	properties_cmd->add_option("--seed", seed, "base seed")->capture_default_str();
	properties_cmd->add_option("--tol", tol, "tolerance")->capture_default_str();
	properties_cmd->add_option("--property", property_names, "property to check (repeatable; default all)");
	properties_cmd->add_option("--family", family, "instance family: random or two_atom")->capture_default_str();
	properties_cmd->add_flag("--fail-on-counterexample", fail_on_counterexample, "exit 4 on a counterexample");

	ValidationGrid grid;
	auto *validate_cmd_app = app.add_subcommand("validate", "grid checks of the score axioms");
	common(validate_cmd_app);
	validate_cmd_app->add_option("--grid-lo", grid.lo)->capture_default_str();
	validate_cmd_app->add_option("--grid-hi", grid.hi)->capture_default_str();
	validate_cmd_app->add_option("--grid-points", grid.points)->capture_default_str();

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		if (e.get_exit_code() == 0) {
			app.exit(e, out, err);
			return ok;
		}
		err << "elicit: " << e.what() << '\n';
		return input_error;
	}

	const Output output{out, out_path, pretty};
	try {
		if (compute_cmd->parsed()) {
			compute(data, spec_path, tol_z, output, log);
		} else if (represent_cmd->parsed()) {
			represent(data, spec_path, points, output);
		} else if (compare_cmd->parsed()) {
			compare(compare_data, compare_value, forecast_a, forecast_b, spec_path, output);
		} else if (properties_cmd->parsed()) {
			const bool found = properties(spec_path, trials, seed, tol, property_names, family, output, log);
			if (found && fail_on_counterexample) {
				return counterexample_found;
			}
		} else if (validate_cmd_app->parsed()) {
			validate_cmd(spec_path, grid, output);
		}
	} catch (const InputError &e) {
		log(Level::error, e.what());
		return input_error;
	} catch (const NumericalError &e) {
		char buf[64];
		std::snprintf(buf, sizeof buf, "%.17g", e.best_iterate());
		log(Level::error, std::string(e.what()) + " (best iterate " + buf + ")");
		return numerical_error;
	} catch (const DomainError &e) {
		log(Level::error, e.what());
		return numerical_error;
	} catch (const std::exception &e) {
		log(Level::error, e.what());
		return internal_error;
	}
	return ok;
}

} // namespace elicit::cli
