#include "mesd/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace mesd;
using namespace mesd::oracle;

namespace {

constexpr double kPi = std::numbers::pi;

MeasurementParams3 trine_povm(double theta) {
    MeasurementParams3 m;
    m.weights = {2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
    m.angles = {theta, -theta, 0.0};
    return m;
}

MeasurementParams3 always_guess(std::size_t i) {
    MeasurementParams3 m;
    m.weights = {0.0, 0.0, 0.0};
    m.weights[i] = 2.0;
    m.bloch_lengths[i] = 0.0;
    return m;
}

}  // namespace

TEST(SuccessTwo, OrthogonalAligned) {
    const auto s1 = make_state(0.4), s2 = orthogonal(s1);
    for (double p : {0.0, 0.2, 0.5, 0.9})
        EXPECT_NEAR(success_two(s1, s2, p, {s1.angle()}), 1.0, 1e-12);
}

TEST(SuccessTwo, IdenticalStatesAtMostLikelierPrior) {
    const auto s = make_state(1.0);
    double best = 0.0;
    for (double a = 0.0; a < kPi; a += 0.01) {
        const double v = success_two(s, s, 0.3, {a});
        EXPECT_LE(v, 0.7 + 1e-12);
        best = std::max(best, v);
    }
    EXPECT_NEAR(best, 0.7, 1e-3);
}

TEST(SuccessTwo, HelstromMeasurement) {
    // psi1 at 0, psi2 at pi/3, c = 0.25, equal priors: 0.5 (1 + sqrt(0.75)).
    const auto s1 = make_state(0.0), s2 = make_state(kPi / 3.0);
    // Optimal projector is symmetric about the bisector, rotated -pi/4 from it.
    const double angle = kPi / 6.0 - kPi / 4.0;
    EXPECT_NEAR(success_two(s1, s2, 0.5, {angle}), 0.933012701892219, 1e-12);
}

TEST(OptimizeTwo, Examples) {
    auto r = optimize_two(make_state(0.0), make_state(kPi / 2.0), 0.5);
    EXPECT_NEAR(r.success, 1.0, 1e-12);

    r = optimize_two(make_state(0.0), make_state(kPi / 6.0), 0.3);
    EXPECT_NEAR(r.success, helstrom_two(TwoStateScenario::make(0.3, 0.75)), 1e-4);
    EXPECT_NEAR(r.success, 0.804138126514911, 1e-6);

    for (double p : {0.0, 0.3, 0.5, 0.85}) {
        const auto s = make_state(0.9);
        EXPECT_NEAR(optimize_two(s, s, p).success, std::max(p, 1.0 - p), 1e-9);
    }
}

TEST(OptimizeTwo, ReportsParamsAndEvaluations) {
    const auto s1 = make_state(0.0), s2 = make_state(1.0);
    const auto r = optimize_two(s1, s2, 0.4);
    const auto& m = std::get<MeasurementParams2>(r.params);
    EXPECT_NEAR(success_two(s1, s2, 0.4, m), r.success, 1e-12);
    EXPECT_GE(r.evaluations, 1024u);
    EXPECT_THROW(optimize_two(s1, s2, 0.4, 32), DomainError);
}

TEST(OptimizeTwo, NeverExceedsHelstrom) {
    for (int k = 1; k < 16; ++k)
        for (int j = 1; j < 20; ++j) {
            const double sep = kPi / 2.0 * k / 16.0, p = j / 20.0;
            const auto r = optimize_two(make_state(0.0), make_state(sep), p);
            const double h = helstrom_two(TwoStateScenario::make(p, std::pow(std::cos(sep), 2)));
            EXPECT_LE(r.success, h + 1e-12);
            EXPECT_NEAR(r.success, h, 1e-4);
        }
}

TEST(ParamsFromAngles, TrineWeights) {
    const auto m = params_from_angles({0.0, kPi / 3.0, 2.0 * kPi / 3.0});
    ASSERT_TRUE(m.has_value());
    for (double a : m->weights) EXPECT_NEAR(a, 2.0 / 3.0, 1e-12);
    EXPECT_FALSE(check_params(*m).has_value());
}

TEST(ParamsFromAngles, InfeasibleOrSingular) {
    // Bloch directions 0, 0.2, 0.4 rad lie in a half plane: some weight would be negative.
    EXPECT_FALSE(params_from_angles({0.0, 0.1, 0.2}).has_value());
    // Repeated direction: singular system.
    EXPECT_FALSE(params_from_angles({0.3, 0.3, 1.0}).has_value());
}

TEST(SuccessThree, TrineOnTrine) {
    const MirrorEnsemble e(kPi / 3.0, 1.0 / 3.0);
    EXPECT_NEAR(success_three(e, trine_povm(kPi / 3.0)), 2.0 / 3.0, 1e-12);
}

TEST(SuccessThree, AlwaysGuessThird) {
    for (double p : {0.0, 0.1, 0.25, 0.5}) {
        const MirrorEnsemble e(0.7, p);
        EXPECT_NEAR(success_three(e, always_guess(2)), 1.0 - 2.0 * p, 1e-12);
    }
    EXPECT_NEAR(success_three(MirrorEnsemble(1.2, 0.0), always_guess(2)), 1.0, 1e-12);
}

TEST(SuccessThree, RejectsIncompleteParams) {
    MeasurementParams3 m;
    m.weights = {1.0, 1.0, 1.0};
    m.angles = {0.0, 1.0, 2.0};
    EXPECT_THROW(success_three(MirrorEnsemble(0.5, 0.2), m), DomainError);
    m = always_guess(0);
    m.weights[0] = -2.0;
    EXPECT_THROW(success_three(MirrorEnsemble(0.5, 0.2), m), DomainError);
}

TEST(SuccessThree, MatchesQcoreBornSumAndStaysInRange) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, kPi), theta(0.0, kPi / 2.0), prior(0.0, 0.5);
    int checked = 0;
    while (checked < 500) {
        const auto m = params_from_angles({angle(rng), angle(rng), angle(rng)});
        if (!m) continue;
        const MirrorEnsemble e(theta(rng), prior(rng));
        const double s = success_three(e, *m);
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, 1.0);

        const auto povm = validate_povm({m->effects()[0], m->effects()[1], m->effects()[2]});
        const auto states = e.states();
        const auto priors = e.priors();
        double direct = 0.0;
        for (std::size_t i = 0; i < 3; ++i) direct += priors[i] * born_probability(states[i], povm[i]);
        EXPECT_NEAR(s, direct, 1e-12);
        EXPECT_LE(s, quantum_three(e) + 1e-12);
        ++checked;
    }
}

TEST(OptimizeThree, Examples) {
    const auto trine = optimize_three(MirrorEnsemble(kPi / 3.0, 1.0 / 3.0));
    EXPECT_NEAR(trine.success, 2.0 / 3.0, 1e-3);

    EXPECT_NEAR(optimize_three(MirrorEnsemble(kPi / 4.0, 0.5)).success, 1.0, 1e-6);

    const MirrorEnsemble low(kPi / 3.0, 0.1);
    EXPECT_NEAR(quantum_three(low), 0.877419354838710, 1e-12);
    EXPECT_NEAR(optimize_three(low).success, quantum_three(low), 1e-3);
}

TEST(OptimizeThree, ResultParamsReproduceSuccess) {
    const MirrorEnsemble e(0.8, 0.3);
    const auto r = optimize_three(e);
    const auto& m = std::get<MeasurementParams3>(r.params);
    EXPECT_FALSE(check_params(m).has_value());
    EXPECT_NEAR(success_three(e, m), r.success, 1e-12);
    EXPECT_GT(r.evaluations, 64u * 64u * 64u);
}

TEST(OptimizeThree, DeterministicForSeed) {
    const MirrorEnsemble e(0.6, 0.27);
    ThreeOptions opts;
    opts.grid_n = 24;
    opts.seed = 99;
    const auto a = optimize_three(e, opts);
    const auto b = optimize_three(e, opts);
    EXPECT_EQ(a.success, b.success);
    EXPECT_EQ(a.evaluations, b.evaluations);
    const auto& ma = std::get<MeasurementParams3>(a.params);
    const auto& mb = std::get<MeasurementParams3>(b.params);
    EXPECT_EQ(ma.angles, mb.angles);
    EXPECT_EQ(ma.weights, mb.weights);
}

TEST(OptimizeThree, DegenerateEnsembles) {
    // Only psi3 is ever sent.
    EXPECT_NEAR(optimize_three(MirrorEnsemble(0.9, 0.0)).success, 1.0, 1e-12);
    // All three states coincide: best is the likeliest prior.
    EXPECT_NEAR(optimize_three(MirrorEnsemble(0.0, 0.2)).success, 0.6, 1e-9);
    EXPECT_NEAR(optimize_three(MirrorEnsemble(0.0, 0.45)).success, 0.45, 1e-9);
}

TEST(OptimizeThree, RejectsTinyGrid) {
    ThreeOptions opts;
    opts.grid_n = 8;
    EXPECT_THROW(optimize_three(MirrorEnsemble(0.5, 0.2), opts), DomainError);
}
