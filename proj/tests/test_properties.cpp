#include "elicit/catalogue.hpp"
#include "elicit/errors.hpp"
#include "elicit/properties.hpp"

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

void expect_clean(const MeasureSpec &spec, Property p, int trials = 500, Family family = Family::random) {
	const auto r = check_property(spec, p, trials, 7, 1e-7, family);
	EXPECT_FALSE(r.counterexample()) << describe(spec) << " " << to_string(p) << " gap "
	                                 << (r.failures.empty() ? 0.0 : r.failures[0].gap);
	EXPECT_EQ(r.verdict(), "no-counterexample-found");
	EXPECT_EQ(r.trials, trials);
}

} // namespace

TEST(Properties, VarMonotoneTranslationHomogeneous) {
	for (auto p : {Property::monotonicity, Property::translation_invariance, Property::positive_homogeneity}) {
		expect_clean(named("var", 0.9), p);
	}
}

TEST(Properties, VarConvexityCounterexampleOnTwoAtomFamily) {
	const auto r = check_property(named("var", 0.9), Property::convexity, 1000, 0, 1e-7, Family::two_atom);
	ASSERT_TRUE(r.counterexample());
	EXPECT_EQ(r.verdict(), "counterexample");
	const auto &f = r.failures.front();
	EXPECT_GT(f.gap, 1e-7);
	EXPECT_EQ(f.lhs - f.rhs, f.gap);
	EXPECT_EQ(f.parameter, 0.5);
	ASSERT_EQ(f.instance.size(), 3u);
	// Every counterexample fails again when replayed alone.
	for (const auto &g : r.failures) {
		const auto again = replay_trial(named("var", 0.9), Property::convexity, g.seed, 1e-7, Family::two_atom);
		ASSERT_EQ(again.status, TrialStatus::failed);
		EXPECT_EQ(again.failures.front().gap, g.gap);
	}
}

TEST(Properties, VarConvexityCounterexampleIsGenuine) {
	// Recompute the failing mixture directly from the recorded instance.
	const double alpha = 0.9;
	const auto r = check_property(named("var", alpha), Property::convexity, 1000, 0, 1e-7, Family::two_atom);
	ASSERT_TRUE(r.counterexample());
	const auto &f = r.failures.front();
	const auto paired = PairedSample::from_atoms(f.instance);
	const double qx = paired.marginal_x().quantile(alpha);
	const double qy = paired.marginal_y().quantile(alpha);
	const double qm = paired.mix(f.parameter).quantile(alpha);
	EXPECT_GT(qm, f.parameter * qx + (1 - f.parameter) * qy);
}

TEST(Properties, ExpectileHalfSatisfiesAllFour) {
	for (auto p : {Property::monotonicity, Property::translation_invariance, Property::positive_homogeneity,
	               Property::convexity}) {
		expect_clean(named("expectile", 0.5), p);
	}
}

TEST(Properties, ExpectileAboveHalfIsConvex) {
	for (double alpha : {0.6, 0.9}) {
		expect_clean(named("expectile", alpha), Property::convexity);
		expect_clean(named("expectile", alpha), Property::monotonicity);
	}
}

TEST(Properties, EntropicMonotoneTranslationConvex) {
	for (auto p : {Property::monotonicity, Property::translation_invariance, Property::convexity}) {
		expect_clean(named("entropic"), p);
	}
}

TEST(Properties, EntropicIsNotPositivelyHomogeneous) {
	const auto r = check_property(named("entropic"), Property::positive_homogeneity, 200, 3);
	EXPECT_TRUE(r.counterexample());
}

TEST(Properties, ExpectileBelowHalfIsNotConvex) {
	const auto r = check_property(named("expectile", 0.1), Property::convexity, 1000, 5);
	EXPECT_TRUE(r.counterexample());
}

TEST(Properties, DeterministicForSameSeed) {
	const auto a = check_property(named("var", 0.7), Property::convexity, 300, 42, 1e-7, Family::two_atom);
	const auto b = check_property(named("var", 0.7), Property::convexity, 300, 42, 1e-7, Family::two_atom);
	EXPECT_EQ(a.failures.size(), b.failures.size());
	EXPECT_EQ(a.inconclusive, b.inconclusive);
	EXPECT_EQ(a.nondifferentiable_trials, b.nondifferentiable_trials);
	for (std::size_t i = 0; i < a.failures.size(); ++i) {
		EXPECT_EQ(a.failures[i].seed, b.failures[i].seed);
		EXPECT_EQ(a.failures[i].gap, b.failures[i].gap);
	}
	const auto c = check_property(named("var", 0.7), Property::convexity, 300, 43, 1e-7, Family::two_atom);
	EXPECT_TRUE(a.failures.empty() || c.failures.empty() || a.failures[0].seed != c.failures[0].seed);
}

TEST(Properties, KinksAreCounted) {
	const auto var = check_property(named("var", 0.9), Property::monotonicity, 100, 1);
	EXPECT_EQ(var.nondifferentiable_trials, 100);
	const auto mean = check_property(named("mean"), Property::monotonicity, 100, 1);
	EXPECT_EQ(mean.nondifferentiable_trials, 0);
}

TEST(Properties, InvalidArguments) {
	EXPECT_THROW(check_property(named("mean"), Property::convexity, 0, 1), InputError);
	EXPECT_THROW(check_property(named("mean"), Property::convexity, 10, 1, 0.0), InputError);
	EXPECT_THROW(check_property(named("nonsense"), Property::convexity, 10, 1), InputError);
}

TEST(Properties, NamesRoundTrip) {
	for (auto p : all_properties()) {
		EXPECT_EQ(property_from_string(to_string(p)), p);
	}
	EXPECT_FALSE(property_from_string("coherence").has_value());
	EXPECT_EQ(family_from_string("two_atom"), Family::two_atom);
	EXPECT_EQ(family_from_string(to_string(Family::random)), Family::random);
	EXPECT_FALSE(family_from_string("normal").has_value());
}

TEST(Hypotheses, SquaredErrorHasConvexH) {
	const auto r = check_score_hypotheses(build(named("mean")));
	EXPECT_TRUE(r.checks[0].passed) << r.checks[0].counterexample;
	EXPECT_EQ(r.checks[0].name, "h_convex_in_x");
	ASSERT_TRUE(r.estimated_p.has_value());
	EXPECT_NEAR(*r.estimated_p, 2.0, 1e-12);
}

TEST(Hypotheses, VarIsOneHomogeneous) {
	const auto r = check_score_hypotheses(build(named("var", 0.9)));
	EXPECT_EQ(r.checks[2].name, "score_p_homogeneous");
	EXPECT_TRUE(r.checks[2].passed) << r.checks[2].counterexample;
	ASSERT_TRUE(r.estimated_p.has_value());
	EXPECT_NEAR(*r.estimated_p, 1.0, 1e-12);
}

TEST(Hypotheses, ExponentialPhiIsNotHomogeneous) {
	MeasureSpec spec;
	spec.phi = PhiSpec{.kind = PhiSpec::Kind::exp, .beta = 1.0};
	spec.mu = MuSpec{.kind = MuSpec::Kind::var, .alpha = 0.9};
	const auto r = check_score_hypotheses(build(spec));
	EXPECT_FALSE(r.checks[2].passed);
	EXPECT_FALSE(r.checks[2].counterexample.empty());
	EXPECT_FALSE(r.estimated_p.has_value());
}

TEST(Hypotheses, DegenerateGrid) {
	EXPECT_THROW(check_score_hypotheses(build(named("mean")), {.lo = 1, .hi = 1}), InputError);
}

TEST(Alignment, FlagsMissingHypothesis) {
	HypothesisReport h;
	h.checks = {{"h_convex_in_x", true, false, "x"}, {"h_star_shaped", true, true, ""}, {"score_p_homogeneous", true, true, ""}};
	PropertyReport convex;
	convex.property = Property::convexity;
	PropertyReport mono;
	mono.property = Property::monotonicity;
	const auto a = align(h, {convex, mono});
	ASSERT_EQ(a.size(), 1u);
	EXPECT_EQ(a[0].hypothesis, "h_convex_in_x");
	EXPECT_FALSE(a[0].consistent);
	convex.failures.push_back({});
	EXPECT_TRUE(align(h, {convex})[0].consistent);
}
