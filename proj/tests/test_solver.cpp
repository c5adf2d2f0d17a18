#include "elicit/catalogue.hpp"
#include "elicit/errors.hpp"
#include "elicit/solver.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace elicit;

namespace {

MeasureSpec named(const std::string &name, double alpha = 0.5) {
	MeasureSpec s;
	s.name = name;
	s.alpha = alpha;
	return s;
}

std::vector<MeasureSpec> convex_catalogue() {
	std::vector<MeasureSpec> specs = {named("mean"),        named("var", 0.1),        named("var", 0.5),
	                                  named("var", 0.95),   named("expectile", 0.2),  named("expectile", 0.8),
	                                  named("lp_quantile", 0.7), named("entropic")};
	auto lambda = named("lambda_var");
	lambda.lambda.breakpoints = {{-5.0, 0.8}, {0.0, 0.5}, {4.0, 0.2}};
	specs.push_back(lambda);
	return specs;
}

} // namespace

TEST(ExpectedScore, Examples) {
	EXPECT_DOUBLE_EQ(expected_score(build(named("mean")), WeightedSample::uniform({1, 3}), 2), 1.0);
	EXPECT_DOUBLE_EQ(expected_score(build(named("var", 0.5)), WeightedSample::uniform({0, 2}), 0), 0.5);
	EXPECT_EQ(expected_score(build(named("var", 0.3)), WeightedSample::point_mass(4.2), 4.2), 0.0);
}

TEST(ExpectedScore, MatchesBruteForceSum) {
	const auto sc = build(named("expectile", 0.3));
	for (std::uint64_t seed = 0; seed < 10; ++seed) {
		const auto s = oracles::random_sample(seed);
		for (double z : {-4.0, 0.0, 2.5}) {
			EXPECT_NEAR(expected_score(sc, s, z), oracles::expected(sc, s, z), 1e-12);
		}
	}
}

TEST(Solve, SquaredErrorIsMean) {
	const auto r = solve(build(named("mean")), WeightedSample::uniform({1, 2, 3}));
	EXPECT_NEAR(r.lo, 2.0, 1e-9);
	EXPECT_NEAR(r.hi, 2.0, 1e-9);
	EXPECT_EQ(r.method, SolveMethod::subgradient_bisection);
	EXPECT_TRUE(r.warnings.empty());
}

TEST(Solve, PinballFlatMinimum) {
	const auto sc = build(named("var", 0.5));
	const auto s = WeightedSample::uniform({1, 2, 3, 4});
	const auto r = solve(sc, s);
	EXPECT_NEAR(r.lo, 2.0, 1e-6);
	EXPECT_NEAR(r.hi, 3.0, 1e-6);
	// Brute-force grid: the minimum value is attained across [2,3].
	const double best = oracles::grid_min(sc, s, 100000).value;
	EXPECT_NEAR(expected_score(sc, s, 2.0), best, 1e-12);
	EXPECT_NEAR(expected_score(sc, s, 3.0), best, 1e-12);
	EXPECT_GT(expected_score(sc, s, 1.99), best);
	EXPECT_GT(expected_score(sc, s, 3.01), best);
}

TEST(Solve, SingleAtomAnyScore) {
	for (const auto &spec : convex_catalogue()) {
		const auto r = solve(build(spec), WeightedSample::point_mass(-1.25));
		EXPECT_EQ(r.lo, -1.25);
		EXPECT_EQ(r.hi, -1.25);
	}
}

TEST(Solve, ZeroGivesZero) {
	for (const auto &spec : convex_catalogue()) {
		const auto r = solve(build(spec), WeightedSample::point_mass(0.0));
		EXPECT_EQ(r.lo, 0.0);
		EXPECT_EQ(r.hi, 0.0);
	}
}

TEST(Solve, InvalidOptions) {
	const auto sc = build(named("mean"));
	const auto s = WeightedSample::uniform({1, 2});
	EXPECT_THROW(solve(sc, s, {.tol_z = -1}), InputError);
	EXPECT_THROW(solve(sc, s, {.max_iter = 0}), InputError);
}

TEST(Solve, IterationBudgetExhaustedCarriesBestIterate) {
	const auto sc = build(named("expectile", 0.3));
	const auto s = oracles::random_sample(3);
	try {
		solve(sc, s, {.tol_z = 0.0, .max_iter = 3});
		FAIL() << "expected NumericalError";
	} catch (const NumericalError &e) {
		EXPECT_TRUE(std::isfinite(e.best_iterate()));
		EXPECT_GE(e.best_iterate(), s.min() - 1);
		EXPECT_LE(e.best_iterate(), s.max() + 1);
	}
}

TEST(Solve, WithinHullAndFocAtBothEndpoints) {
	for (const auto &spec : convex_catalogue()) {
		const auto sc = build(spec);
		for (std::uint64_t seed = 0; seed < 40; ++seed) {
			const auto s = seed % 2 ? oracles::random_sample(seed) : oracles::lattice_sample(seed);
			const auto r = solve(sc, s);
			EXPECT_LE(r.lo, r.hi);
			EXPECT_GE(r.lo, s.min());
			EXPECT_LE(r.hi, s.max());
			EXPECT_TRUE(foc_check(sc, s, r.lo).satisfied) << describe(spec) << " seed " << seed;
			EXPECT_TRUE(foc_check(sc, s, r.hi).satisfied) << describe(spec) << " seed " << seed;
			EXPECT_LE(r.foc_residual, 1e-6);
		}
	}
}

TEST(Solve, AgreesWithBruteForceGrid) {
	for (const auto &spec : convex_catalogue()) {
		const auto sc = build(spec);
		for (std::uint64_t seed = 0; seed < 5; ++seed) {
			const auto s = oracles::random_sample(seed, 3, 12);
			const auto r = solve(sc, s);
			const auto g = oracles::grid_min(sc, s, 20000);
			EXPECT_LE(r.expected_score_at_min, g.value + 1e-9) << describe(spec);
		}
	}
}

TEST(Solve, ExpectileMatchesExactRoot) {
	for (double alpha : {0.2, 0.5, 0.8}) {
		const auto sc = build(named("expectile", alpha));
		for (std::uint64_t seed = 0; seed < 30; ++seed) {
			const auto s = oracles::random_sample(seed);
			const auto r = solve(sc, s);
			EXPECT_NEAR(r.lo, oracles::expectile_exact(s, alpha), 1e-8);
		}
	}
}

TEST(Solve, VarEndpointsBracketQuantile) {
	std::vector<double> v;
	for (int i = 1; i <= 100; ++i) {
		v.push_back(i);
	}
	const auto r = solve(build(named("var", 0.95)), WeightedSample::uniform(v));
	EXPECT_EQ(r.lo, 95.0);
	EXPECT_EQ(r.hi, 96.0);
}

TEST(Solve, NonconvexScoreUsesHeuristicWithWarning) {
	const YoungFn phi({.name = "sqrt",
	                   .value = [](double t) { return std::sqrt(t); },
	                   .dplus = [](double t) { return t > 0 ? 0.5 / std::sqrt(t) : INFINITY; },
	                   .dminus = [](double t) { return 0.5 / std::sqrt(t); }});
	const MuFn mu({.name = "indicator",
	               .value = [](double z, double x) { return x == z ? 0.0 : 1.0; },
	               .dz_plus = [](double, double) { return 0.0; },
	               .dz_minus = [](double, double) { return 0.0; },
	               .limit_above = [](double) { return 1.0; },
	               .limit_below = [](double) { return 1.0; }});
	const MultiplicativeScore sc("sqrt", phi, mu, {.convex_in_z = false});
	const auto s = WeightedSample::from_atoms({{0, 0.2}, {1, 0.6}, {5, 0.2}});
	const auto r = solve(sc, s);
	EXPECT_EQ(r.method, SolveMethod::grid_refine);
	ASSERT_EQ(r.warnings.size(), 1u);
	EXPECT_EQ(r.warnings[0], "nonconvex-heuristic");
	EXPECT_NEAR(r.lo, 1.0, 1e-6);
	EXPECT_LE(r.expected_score_at_min, oracles::grid_min(sc, s, 20000).value + 1e-9);
}

TEST(Solve, ForcedGoldenSection) {
	const auto sc = build(named("mean"));
	const auto s = WeightedSample::uniform({1, 2, 6});
	const auto r = solve(sc, s, {.method = SolveMethod::golden_section});
	EXPECT_EQ(r.method, SolveMethod::golden_section);
	EXPECT_NEAR(r.lo, 3.0, 1e-6);
}

TEST(Foc, Examples) {
	const auto se = build(named("mean"));
	const auto s = WeightedSample::uniform({1, 2, 3});
	const auto at2 = foc_check(se, s, 2);
	EXPECT_NEAR(at2.lhs, 0.0, 1e-12);
	EXPECT_NEAR(at2.rhs, 0.0, 1e-12);
	EXPECT_TRUE(at2.satisfied);
	EXPECT_FALSE(foc_check(se, s, 0).satisfied);
	EXPECT_GT(foc_check(se, s, 0).residual, 0.0);

	const auto pinball = build(named("var", 0.5));
	EXPECT_TRUE(foc_check(pinball, WeightedSample::uniform({1, 2, 3, 4}), 2.5).satisfied);
	EXPECT_FALSE(foc_check(pinball, WeightedSample::uniform({1, 2, 3, 4}), 3.5).satisfied);
}

TEST(Foc, SlopeAtAtomUsesOneSidedDerivatives) {
	const auto pinball = build(named("var", 0.5));
	const auto sl = expected_slope(pinball, WeightedSample::uniform({1, 2, 3, 4}), 2.0);
	EXPECT_DOUBLE_EQ(sl.left, -0.25);
	EXPECT_DOUBLE_EQ(sl.right, 0.0);
}

TEST(Method, Names) {
	EXPECT_EQ(to_string(SolveMethod::subgradient_bisection), "subgradient-bisection");
	EXPECT_EQ(to_string(SolveMethod::golden_section), "golden-section");
	EXPECT_EQ(to_string(SolveMethod::grid_refine), "grid-refine");
}
