#include "elicit/csv.hpp"
#include "elicit/empirical.hpp"
#include "elicit/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace elicit;

namespace {

std::string write_temp(const std::string &name, const std::string &content) {
	const auto path = std::filesystem::temp_directory_path() / ("elicit_test_" + name);
	std::ofstream(path, std::ios::binary) << content;
	return path.string();
}

void expect_atoms(const WeightedSample &s, std::vector<Atom> expected) {
	ASSERT_EQ(s.size(), expected.size());
	for (std::size_t i = 0; i < expected.size(); ++i) {
		EXPECT_EQ(s.atoms()[i].value, expected[i].value) << i;
		EXPECT_NEAR(s.atoms()[i].weight, expected[i].weight, 1e-15) << i;
	}
}

} // namespace

TEST(FromCsv, UnweightedRowsGetEqualWeight) {
	const auto path = write_temp("uniform.csv", "value\n1\n2\n3\n");
	expect_atoms(read_sample_csv(path), {{1, 1.0 / 3}, {2, 1.0 / 3}, {3, 1.0 / 3}});
}

TEST(FromCsv, EqualValuesMerge) {
	const auto path = write_temp("merge.csv", "value,weight\n5,2\n5,3\n");
	expect_atoms(read_sample_csv(path, "value", "weight"), {{5, 1.0}});
}

TEST(FromCsv, WeightsNormalizeAndZeroWeightAtomsStay) {
	const auto path = write_temp("norm.csv", "value,weight\n1,0\n2,4\n");
	expect_atoms(read_sample_csv(path, "value", "weight"), {{1, 0.0}, {2, 1.0}});
}

TEST(FromCsv, BlankLinesAndBomAreSkipped) {
	const auto path = write_temp("bom.csv", "\xEF\xBB\xBFvalue\n\n 4 \n\n6\n");
	expect_atoms(read_sample_csv(path), {{4, 0.5}, {6, 0.5}});
}

TEST(FromCsv, ErrorsNameFileAndLine) {
	const auto bad = write_temp("nan.csv", "value\n1\nnan\n");
	try {
		read_sample_csv(bad);
		FAIL() << "expected InputError";
	} catch (const InputError &e) {
		const std::string msg = e.what();
		EXPECT_NE(msg.find(bad + ":3:"), std::string::npos) << msg;
	}
	EXPECT_THROW(read_sample_csv(write_temp("inf.csv", "value\ninf\n")), InputError);
	EXPECT_THROW(read_sample_csv(write_temp("empty.csv", "")), InputError);
	EXPECT_THROW(read_sample_csv(write_temp("header_only.csv", "value\n")), InputError);
	EXPECT_THROW(read_sample_csv(write_temp("neg.csv", "value,weight\n1,-1\n"), "value", "weight"), InputError);
	EXPECT_THROW(read_sample_csv(write_temp("zero.csv", "value,weight\n1,0\n2,0\n"), "value", "weight"), InputError);
	EXPECT_THROW(read_sample_csv(write_temp("text.csv", "value\nabc\n")), InputError);
	EXPECT_THROW(read_sample_csv(write_temp("ragged.csv", "value,weight\n1\n")), InputError);
	EXPECT_THROW(read_sample_csv(write_temp("nocol.csv", "x\n1\n")), InputError);
	EXPECT_THROW(read_sample_csv("/nonexistent/elicit.csv"), InputError);
}

TEST(FromAtoms, RejectsInvalidInput) {
	EXPECT_THROW(WeightedSample::from_atoms({}), InputError);
	EXPECT_THROW(WeightedSample::from_atoms({{NAN, 1.0}}), InputError);
	EXPECT_THROW(WeightedSample::from_atoms({{1.0, -0.5}}), InputError);
	EXPECT_THROW(WeightedSample::from_atoms({{1.0, 0.0}}), InputError);
}

TEST(FromAtoms, SortsMergesAndNormalizes) {
	const auto s = WeightedSample::from_atoms({{3, 1}, {1, 1}, {3, 2}, {2, 4}});
	expect_atoms(s, {{1, 0.125}, {2, 0.5}, {3, 0.375}});
	double total = 0.0;
	for (const auto &a : s.atoms()) {
		total += a.weight;
	}
	EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Cdf, StepFunction) {
	const auto s = WeightedSample::uniform({1, 2, 3});
	EXPECT_DOUBLE_EQ(s.cdf(2), 2.0 / 3);
	EXPECT_EQ(s.cdf(0.5), 0.0);
	EXPECT_EQ(s.cdf(3), 1.0);
	EXPECT_EQ(s.cdf(100), 1.0);
	EXPECT_DOUBLE_EQ(s.cdf_left(2), 1.0 / 3);
	EXPECT_EQ(s.cdf_left(1), 0.0);
}

TEST(Cdf, MonotoneAndRightContinuousOnGrid) {
	for (std::uint64_t seed = 0; seed < 20; ++seed) {
		const auto s = oracles::random_sample(seed);
		double prev = 0.0;
		for (int i = 0; i <= 400; ++i) {
			const double z = -11.0 + 22.0 * i / 400;
			const double F = s.cdf(z);
			EXPECT_GE(F, prev);
			prev = F;
		}
		for (const auto &a : s.atoms()) {
			// Right-continuity: F at the atom equals the limit from the right.
			EXPECT_EQ(s.cdf(a.value), s.cdf(std::nextafter(a.value, INFINITY)));
		}
	}
}

TEST(Quantile, EnumerationOracle) {
	const auto s = WeightedSample::uniform({1, 2, 3, 4});
	EXPECT_EQ(s.quantile(0.5), 2);
	EXPECT_EQ(s.quantile(0.75), 3);
	EXPECT_EQ(s.quantile(0.25), 1);
	EXPECT_EQ(s.quantile(0.2500001), 2);
	EXPECT_EQ(WeightedSample::point_mass(7.5).quantile(0.01), 7.5);
	EXPECT_EQ(WeightedSample::point_mass(7.5).quantile(0.99), 7.5);
	EXPECT_THROW(s.quantile(0.0), InputError);
	EXPECT_THROW(s.quantile(1.0), InputError);
	EXPECT_THROW(s.quantile(-0.1), InputError);
}

TEST(Quantile, KOverNLevelsAreExact) {
	std::vector<double> v;
	for (int i = 1; i <= 100; ++i) {
		v.push_back(i);
	}
	const auto s = WeightedSample::uniform(v);
	for (int k = 1; k < 100; ++k) {
		EXPECT_EQ(s.quantile(k / 100.0), k) << k;
	}
}

TEST(Quantile, MonotoneAndConsistentWithCdf) {
	for (std::uint64_t seed = 0; seed < 20; ++seed) {
		const auto s = oracles::random_sample(seed);
		double prev = -INFINITY;
		for (int i = 1; i < 200; ++i) {
			const double alpha = i / 200.0;
			const double q = s.quantile(alpha);
			EXPECT_GE(q, prev);
			EXPECT_GE(s.cdf(q), alpha - 1e-15);
			EXPECT_EQ(q, oracles::quantile_by_enumeration(s, alpha));
			prev = q;
		}
	}
}

TEST(Transform, Examples) {
	expect_atoms(WeightedSample::from_atoms({{-1, 0.5}, {1, 0.5}}).transform([](double x) { return x * x; }),
	             {{1, 1.0}});
	expect_atoms(WeightedSample::point_mass(1).transform([](double x) { return std::exp(x); }), {{std::exp(1.0), 1.0}});
	expect_atoms(WeightedSample::uniform({1, 2}).transform([](double x) { return 2 * x + 1; }), {{3, 0.5}, {5, 0.5}});
}

TEST(Transform, IdentityAndAffineQuantiles) {
	for (std::uint64_t seed = 0; seed < 10; ++seed) {
		const auto s = oracles::random_sample(seed);
		const auto id = s.transform([](double x) { return x; });
		ASSERT_EQ(id.size(), s.size());
		for (std::size_t i = 0; i < s.size(); ++i) {
			EXPECT_EQ(id.atoms()[i].value, s.atoms()[i].value);
			EXPECT_NEAR(id.atoms()[i].weight, s.atoms()[i].weight, 1e-15);
		}
		const auto t = s.transform([](double x) { return 3.0 * x + 2.0; });
		for (double alpha : {0.1, 0.33, 0.5, 0.9}) {
			EXPECT_EQ(t.quantile(alpha), 3.0 * s.quantile(alpha) + 2.0);
		}
	}
}

TEST(Transform, NonFiniteOutputIsDomainError) {
	const auto s = WeightedSample::uniform({-1, 1});
	EXPECT_THROW(s.transform([](double x) { return std::log(x); }), DomainError);
	EXPECT_THROW(s.transform([](double x) { return x * 1e308 * 10; }), DomainError);
}

TEST(Moments, MatchDirectSums) {
	const auto s = WeightedSample::uniform({1, 2, 3});
	EXPECT_DOUBLE_EQ(s.mean(), 2.0);
	EXPECT_DOUBLE_EQ(s.moment(2), 14.0 / 3);
	EXPECT_DOUBLE_EQ(s.variance(), 2.0 / 3);
}

TEST(Paired, MarginalsAndMix) {
	const auto p = PairedSample::from_atoms({{1, 10, 1}, {2, 20, 3}});
	expect_atoms(p.marginal_x(), {{1, 0.25}, {2, 0.75}});
	expect_atoms(p.marginal_y(), {{10, 0.25}, {20, 0.75}});
	expect_atoms(p.mix(0.5), {{5.5, 0.25}, {11, 0.75}});
	EXPECT_THROW(PairedSample::from_atoms({}), InputError);
	EXPECT_THROW(PairedSample::from_atoms({{1, 1, -1}}), InputError);
}

TEST(CsvTable, ColumnsAndLineNumbers) {
	const auto path = write_temp("table.csv", "a, b\n1,2\n\n3,4\n");
	const auto t = read_csv_table(path);
	EXPECT_EQ(t.rows(), 2u);
	EXPECT_EQ(t.column("b"), (std::vector<double>{2, 4}));
	EXPECT_EQ(t.line_numbers, (std::vector<std::size_t>{2, 4}));
	EXPECT_TRUE(t.has_column("a"));
	EXPECT_FALSE(t.has_column("c"));
	EXPECT_THROW(t.column("c"), InputError);
}
