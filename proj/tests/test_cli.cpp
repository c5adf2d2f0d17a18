#include "cli.hpp"

#include "elicit/empirical.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
protected:
	void SetUp() override {
		dir_ = fs::temp_directory_path() /
		       ("elicit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
		fs::create_directories(dir_);
	}
	void TearDown() override { fs::remove_all(dir_); }

	std::string file(const std::string &name, const std::string &content) const {
		const auto p = (dir_ / name).string();
		std::ofstream(p, std::ios::binary) << content;
		return p;
	}

	std::string values_csv(const std::vector<double> &v, const std::string &name = "data.csv") const {
		std::ostringstream os;
		os.precision(17);
		os << "value\n";
		for (double x : v) {
			os << x << '\n';
		}
		return file(name, os.str());
	}

	int run(std::vector<std::string> args) {
		args.insert(args.begin(), "elicit");
		std::vector<const char *> argv;
		for (const auto &a : args) {
			argv.push_back(a.c_str());
		}
		std::ostringstream out;
		std::ostringstream err;
		const int code = elicit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
		out_ = out.str();
		err_ = err.str();
		return code;
	}

	json output() const { return json::parse(out_); }

	fs::path dir_;
	std::string out_;
	std::string err_;
};

std::vector<double> one_to(int n) {
	std::vector<double> v;
	for (int i = 1; i <= n; ++i) {
		v.push_back(i);
	}
	return v;
}

} // namespace

TEST_F(CliTest, ComputeMean) {
	ASSERT_EQ(run({"compute", "--data", values_csv({1, 2, 3}), "--spec", file("s.json", R"({"name": "mean"})")}), 0)
	    << err_;
	const auto j = output();
	EXPECT_NEAR(j["lo"].get<double>(), 2.0, 1e-9);
	EXPECT_NEAR(j["hi"].get<double>(), 2.0, 1e-9);
	EXPECT_EQ(j["measure"], "mean");
	EXPECT_EQ(j["method"], "subgradient-bisection");
	for (const auto *key : {"expected_score", "foc_residual", "warnings"}) {
		EXPECT_TRUE(j.contains(key)) << key;
	}
}

TEST_F(CliTest, ComputeVarBracketsQuantile) {
	ASSERT_EQ(run({"compute", "--data", values_csv(one_to(100)), "--spec",
	               file("s.json", R"({"name": "var", "alpha": 0.95})")}),
	          0);
	const auto j = output();
	EXPECT_LE(j["lo"].get<double>(), 95.0);
	EXPECT_GE(j["hi"].get<double>(), 95.0);
	EXPECT_EQ(j["lo"].get<double>(), 95.0);
}

TEST_F(CliTest, ComputeEntropic) {
	ASSERT_EQ(run({"compute", "--data", values_csv({0, 1}), "--spec", file("s.json", R"({"name": "entropic"})")}), 0);
	EXPECT_NEAR(output()["lo"].get<double>(), std::log((1 + std::exp(1.0)) / 2), 1e-8);
}

TEST_F(CliTest, ComputeOsbandReportsBase) {
	ASSERT_EQ(run({"compute", "--data", values_csv({0, 1}), "--spec",
	               file("s.json", R"({"name": "mean", "transform": {"kind": "exp", "gamma": 1},
	                                  "osband": {"kind": "log_scaled", "gamma": 1}})")}),
	          0);
	const auto j = output();
	EXPECT_NEAR(j["lo"].get<double>(), std::log((1 + std::exp(1.0)) / 2), 1e-9);
	EXPECT_NEAR(j["base"]["lo"].get<double>(), (1 + std::exp(1.0)) / 2, 1e-9);
}

TEST_F(CliTest, ComputeJointMeanVariance) {
	ASSERT_EQ(run({"compute", "--data", values_csv({1, 2, 3}), "--spec",
	               file("s.json", R"({"joint": [{"name": "mean"}, {"name": "mean", "transform": {"kind": "power", "k": 2}}],
	                                  "osband": {"kind": "mean_variance"}})")}),
	          0);
	const auto j = output();
	EXPECT_NEAR(j["values"][0].get<double>(), 2.0, 1e-9);
	EXPECT_NEAR(j["values"][1].get<double>(), 2.0 / 3, 1e-9);
	EXPECT_EQ(j["components"].size(), 2u);
	EXPECT_EQ(j["measure"], "joint(mean,mean)");
}

TEST_F(CliTest, ComputeWeightedAndOutFile) {
	const auto data = file("w.csv", "x,w\n1,1\n2,3\n");
	const auto out = (dir_ / "result.json").string();
	ASSERT_EQ(run({"compute", "--data", data, "--value-column", "x", "--weight-column", "w", "--spec",
	               file("s.json", R"({"name": "mean"})"), "--out", out}),
	          0);
	EXPECT_TRUE(out_.empty());
	std::ifstream in(out);
	const auto j = json::parse(in);
	EXPECT_NEAR(j["lo"].get<double>(), 1.75, 1e-9);
}

TEST_F(CliTest, ComputePrettyTable) {
	ASSERT_EQ(run({"compute", "--data", values_csv({1, 2, 3}), "--spec", file("s.json", R"({"name": "mean"})"),
	               "--pretty"}),
	          0);
	EXPECT_NE(out_.find("measure"), std::string::npos);
	EXPECT_NE(out_.find("subgradient-bisection"), std::string::npos);
	EXPECT_THROW(json::parse(out_), json::parse_error);
}

TEST_F(CliTest, ComputeTolerance) {
	ASSERT_EQ(run({"compute", "--data", values_csv({0, 1, 5}), "--spec", file("s.json", R"({"name": "expectile", "alpha": 0.3})"),
	               "--tol-z", "1e-3"}),
	          0);
	ASSERT_EQ(run({"compute", "--data", values_csv({0, 1, 5}), "--spec", file("s.json", R"({"name": "expectile"})"),
	               "--tol-z", "-1"}),
	          2);
}

TEST_F(CliTest, ParseErrorsExitTwoAndNameFileAndLine) {
	const auto bad = file("bad.csv", "value\n1\nabc\n");
	EXPECT_EQ(run({"compute", "--data", bad, "--spec", file("s.json", R"({"name": "mean"})")}), 2);
	EXPECT_NE(err_.find(bad + ":3:"), std::string::npos) << err_;

	const auto spec = file("bad.json", R"({"name": "var", "alpah": 0.9})");
	EXPECT_EQ(run({"compute", "--data", values_csv({1}), "--spec", spec}), 2);
	EXPECT_NE(err_.find(spec + ": spec.alpah"), std::string::npos) << err_;

	EXPECT_EQ(run({"compute", "--data", (dir_ / "missing.csv").string(), "--spec", spec}), 2);
	EXPECT_EQ(run({"compute", "--spec", spec}), 2);
	EXPECT_EQ(run({"frobnicate"}), 2);
	EXPECT_EQ(run({}), 2);
}

TEST_F(CliTest, NumericalFailureExitsThree) {
	ASSERT_EQ(run({"compute", "--data", values_csv({0.3, 1.7, 5.1}), "--spec",
	               file("s.json", R"({"name": "expectile", "alpha": 0.3, "solver": {"tol_z": 0, "max_iter": 2}})")}),
	          3);
	EXPECT_NE(err_.find("best iterate"), std::string::npos);
	// Osband map outside its domain.
	ASSERT_EQ(run({"compute", "--data", values_csv({-2, -1}), "--spec",
	               file("s.json", R"({"name": "mean", "osband": {"kind": "log_scaled", "gamma": 1}})")}),
	          3);
}

TEST_F(CliTest, HelpExitsZero) {
	EXPECT_EQ(run({"--help"}), 0);
	EXPECT_NE(out_.find("compute"), std::string::npos);
	EXPECT_EQ(run({"compute", "--help"}), 0);
	EXPECT_NE(out_.find("--data"), std::string::npos);
}

TEST_F(CliTest, RepresentVarConstantGPlus) {
	ASSERT_EQ(run({"represent", "--data", values_csv(one_to(100)), "--spec",
	               file("s.json", R"({"name": "var", "alpha": 0.95})"), "--points", "50"}),
	          0);
	const auto rows = output();
	ASSERT_TRUE(rows.is_array());
	ASSERT_GE(rows.size(), 50u);
	double prev = -INFINITY;
	for (const auto &r : rows) {
		EXPECT_NEAR(r["gplus"].get<double>(), 19.0, 1e-12);
		EXPECT_GT(r["z"].get<double>(), 1.0);
		EXPECT_LT(r["z"].get<double>(), 100.0);
		EXPECT_GT(r["z"].get<double>(), prev);
		prev = r["z"].get<double>();
		for (const auto *key : {"F", "gminus", "ratio"}) {
			EXPECT_TRUE(r.contains(key));
		}
	}
}

TEST_F(CliTest, RepresentLambdaGMinusIsLevelOdds) {
	ASSERT_EQ(run({"represent", "--data", values_csv({-3, -1, 0.5, 2, 4}), "--spec",
	               file("s.json", R"({"name": "lambda_var", "lambda": {"breakpoints": [[-2, 0.7], [1, 0.3]]}})")}),
	          0);
	for (const auto &r : output()) {
		const double z = r["z"].get<double>();
		const double level = z <= 1 ? 0.7 : 0.3; // Lambda(z-)
		EXPECT_NEAR(r["gminus"].get<double>(), level / (1 - level), 1e-12) << z;
	}
}

TEST_F(CliTest, RepresentRejectsOsbandAndJoint) {
	EXPECT_EQ(run({"represent", "--data", values_csv({1, 2}), "--spec",
	               file("s.json", R"({"name": "mean", "osband": {"kind": "identity"}})")}),
	          2);
	EXPECT_EQ(run({"represent", "--data", values_csv({1, 2}), "--spec",
	               file("s.json", R"({"joint": [{"name": "mean"}]})")}),
	          2);
}

TEST_F(CliTest, CompareTruthBeatsConstant) {
	const auto data = file("d.csv", "value,truth,zero\n1,1,0\n-2,-2,0\n3.5,3.5,0\n");
	ASSERT_EQ(run({"compare", "--data", data, "--forecast-a", "truth", "--forecast-b", "zero", "--spec",
	               file("s.json", R"({"name": "mean"})")}),
	          0);
	const auto j = output();
	EXPECT_EQ(j["mean_score_a"].get<double>(), 0.0);
	EXPECT_GT(j["mean_score_b"].get<double>(), 0.0);
	EXPECT_EQ(j["winner"], "a");
	EXPECT_EQ(j["n"], 3);
	EXPECT_DOUBLE_EQ(j["diff"].get<double>(), j["mean_score_a"].get<double>() - j["mean_score_b"].get<double>());
}

TEST_F(CliTest, CompareIdenticalIsTie) {
	const auto data = file("d.csv", "value,f\n1,2\n2,2\n");
	ASSERT_EQ(run({"compare", "--data", data, "--forecast-a", "f", "--forecast-b", "f", "--spec",
	               file("s.json", R"({"name": "var", "alpha": 0.3})")}),
	          0);
	EXPECT_EQ(output()["diff"].get<double>(), 0.0);
	EXPECT_EQ(output()["winner"], "tie");
}

TEST_F(CliTest, CompareQuantileForecasterWins) {
	std::mt19937_64 rng(2024);
	std::normal_distribution<double> normal(0.0, 1.0);
	std::vector<double> x(500);
	for (auto &v : x) {
		v = normal(rng);
	}
	const double q = elicit::WeightedSample::uniform(x).quantile(0.9);
	std::ostringstream a;
	std::ostringstream b;
	a.precision(17);
	b.precision(17);
	a << "value\n";
	b << "value\n";
	double direct_a = 0.0;
	double direct_b = 0.0;
	for (double v : x) {
		a << q << '\n';
		b << q + 1 << '\n';
		direct_a += v > q ? 0.9 * (v - q) : 0.1 * (q - v);
		direct_b += v > q + 1 ? 0.9 * (v - q - 1) : 0.1 * (q + 1 - v);
	}
	ASSERT_EQ(run({"compare", "--data", values_csv(x), "--forecast-a", file("a.csv", a.str()), "--forecast-b",
	               file("b.csv", b.str()), "--spec", file("s.json", R"({"name": "var", "alpha": 0.9})")}),
	          0)
	    << err_;
	const auto j = output();
	EXPECT_EQ(j["winner"], "a");
	EXPECT_LT(j["mean_score_a"].get<double>(), j["mean_score_b"].get<double>());
	EXPECT_NEAR(j["mean_score_a"].get<double>(), direct_a / 500, 1e-12);
	EXPECT_NEAR(j["mean_score_b"].get<double>(), direct_b / 500, 1e-12);
}

TEST_F(CliTest, CompareLengthMismatch) {
	const auto data = values_csv({1, 2, 3});
	EXPECT_EQ(run({"compare", "--data", data, "--forecast-a", values_csv({1, 2}, "a.csv"), "--forecast-b", "value",
	               "--spec", file("s.json", R"({"name": "mean"})")}),
	          2);
	EXPECT_NE(err_.find("length"), std::string::npos);
	EXPECT_EQ(run({"compare", "--data", data, "--forecast-a", "nope", "--forecast-b", "value", "--spec",
	               file("s.json", R"({"name": "mean"})")}),
	          2);
}

TEST_F(CliTest, PropertiesReportsAndExitCodes) {
	const auto spec = file("s.json", R"({"name": "var", "alpha": 0.9})");
	ASSERT_EQ(run({"properties", "--spec", spec, "--trials", "200", "--seed", "3", "--property", "monotonicity",
	               "--property", "translation_invariance"}),
	          0);
	const auto j = output();
	ASSERT_EQ(j["reports"].size(), 2u);
	for (const auto &r : j["reports"]) {
		EXPECT_EQ(r["verdict"], "no-counterexample-found");
	}
	EXPECT_EQ(j["seed"], 3);
	EXPECT_TRUE(j.contains("hypotheses"));
	EXPECT_TRUE(j.contains("alignment"));

	ASSERT_EQ(run({"properties", "--spec", spec, "--trials", "1000", "--property", "convexity", "--family",
	               "two_atom"}),
	          0);
	EXPECT_EQ(output()["reports"][0]["verdict"], "counterexample");
	EXPECT_EQ(run({"properties", "--spec", spec, "--trials", "1000", "--property", "convexity", "--family",
	               "two_atom", "--fail-on-counterexample"}),
	          4);
	EXPECT_EQ(run({"properties", "--spec", spec, "--property", "coherence"}), 2);
	EXPECT_EQ(run({"properties", "--spec", spec, "--family", "normal"}), 2);
	EXPECT_EQ(run({"properties", "--spec", spec, "--trials", "0"}), 2);
}

TEST_F(CliTest, ValidateReportsChecks) {
	ASSERT_EQ(run({"validate", "--spec", file("s.json", R"({"name": "var", "alpha": 0.9})")}), 0);
	const auto j = output();
	EXPECT_EQ(j["measure"], "var(alpha=0.9)");
	EXPECT_TRUE(j.contains("checks"));
	EXPECT_EQ(run({"validate", "--spec", file("s.json", R"({"name": "mean"})"), "--grid-points", "2"}), 2);
}

TEST_F(CliTest, NumbersUseSeventeenDigits) {
	ASSERT_EQ(run({"compute", "--data", values_csv({0, 1}), "--spec", file("s.json", R"({"name": "entropic"})")}), 0);
	EXPECT_NE(out_.find("0.620114506958277"), std::string::npos) << out_;
}

TEST_F(CliTest, InProcessRunsAreByteIdentical) {
	const auto spec = file("s.json", R"({"name": "expectile", "alpha": 0.8})");
	const auto data = values_csv({0.1, 0.7, 2.3, -4.5, 9.9});
	ASSERT_EQ(run({"properties", "--spec", spec, "--trials", "100", "--seed", "11"}), 0);
	const std::string first = out_;
	ASSERT_EQ(run({"properties", "--spec", spec, "--trials", "100", "--seed", "11"}), 0);
	EXPECT_EQ(first, out_);
	ASSERT_EQ(run({"compute", "--data", data, "--spec", spec}), 0);
	const std::string c1 = out_;
	ASSERT_EQ(run({"compute", "--data", data, "--spec", spec}), 0);
	EXPECT_EQ(c1, out_);
}

TEST_F(CliTest, BinaryRunsAreByteIdentical) {
	const auto spec = file("s.json", R"({"name": "var", "alpha": 0.9})");
	const auto run_binary = [&](const std::string &out) {
		const std::string cmd = std::string(ELICIT_BINARY) + " properties --spec " + spec +
		                        " --trials 200 --seed 5 --out " + out;
		return std::system(cmd.c_str());
	};
	const auto a = (dir_ / "a.json").string();
	const auto b = (dir_ / "b.json").string();
	ASSERT_EQ(run_binary(a), 0);
	ASSERT_EQ(run_binary(b), 0);
	std::ifstream fa(a, std::ios::binary);
	std::ifstream fb(b, std::ios::binary);
	const std::string sa((std::istreambuf_iterator<char>(fa)), {});
	const std::string sb((std::istreambuf_iterator<char>(fb)), {});
	EXPECT_FALSE(sa.empty());
	EXPECT_EQ(sa, sb);
}
