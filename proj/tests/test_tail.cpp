#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "framepath/constants.hpp"
#include "framepath/frame.hpp"
#include "framepath/pvar.hpp"
#include "framepath/sampler.hpp"
#include "framepath/tail.hpp"

namespace fp = framepath;

namespace {

// Quadrature oracle for E|Z|^{p'} with Z ~ N(0, 1): Simpson on [0, 12].
double abs_moment_quadrature(double pprime) {
    const int n = 1 << 16;
    const double hi = 12.0;
    const double h = hi / n;
    auto f = [&](double x) {
        return std::pow(x, pprime) *
               std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    };
    double s = f(0.0) + f(hi);
    for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return 2.0 * s * h / 3.0;  // twice the half-line integral
}

}  // namespace

TEST(GaussMoments, ClosedFormAgainstQuadrature) {
    EXPECT_DOUBLE_EQ(fp::gaussian_abs_moment(2.0, 0.25), 0.25);
    EXPECT_NEAR(fp::gaussian_abs_moment(1.0, 1.0), abs_moment_quadrature(1.0), 1e-10);
    EXPECT_NEAR(fp::gaussian_abs_moment(1.0, 1.0), std::sqrt(2.0 / std::numbers::pi),
                1e-12);
    EXPECT_NEAR(fp::gaussian_abs_moment(4.0, 1.0), abs_moment_quadrature(4.0), 1e-8);
    EXPECT_NEAR(fp::gaussian_abs_moment(4.0, 1.0), 3.0, 1e-12);
    // Scaling in dt: moment(p', dt) = moment(p', 1) dt^{p'/2}.
    EXPECT_NEAR(fp::gaussian_abs_moment(3.0, 0.25),
                fp::gaussian_abs_moment(3.0, 1.0) * std::pow(0.25, 1.5), 1e-14);
    EXPECT_THROW(fp::gaussian_abs_moment(0.0, 1.0), fp::domain_error);
}

TEST(GaussMoments, MonteCarloAgreesWithinThreeSigma) {
    const fp::MomentCheck r = fp::mc_moment_check(2.0, 0.25, 6, 10000, fp::Seed{7});
    EXPECT_NEAR(r.estimate, r.formula, 3.0 * r.stderr_);
    EXPECT_DOUBLE_EQ(r.formula, 0.25);

    // Deterministic in the seed.
    const fp::MomentCheck again = fp::mc_moment_check(2.0, 0.25, 6, 10000, fp::Seed{7});
    EXPECT_EQ(r.estimate, again.estimate);
    EXPECT_EQ(r.stderr_, again.stderr_);

    EXPECT_THROW(fp::mc_moment_check(2.0, 0.25, 6, 1, fp::Seed{7}), fp::domain_error);
    EXPECT_THROW(fp::mc_moment_check(2.0, 0.3, 6, 100, fp::Seed{7}),
                 fp::alignment_error);
}

TEST(WindowNorm, ExactValueAndExtremal) {
    const fp::WindowNormCheck a = fp::cm_window_norm(0.0, 0.25);
    EXPECT_DOUBLE_EQ(a.lip_value, 0.5);
    EXPECT_EQ(a.extremal_argmax, 0.0);
    EXPECT_TRUE(a.ok);

    EXPECT_DOUBLE_EQ(fp::cm_window_norm(0.0, 1.0).lip_value, 1.0);
    EXPECT_NEAR(fp::cm_window_norm(0.25, 0.26).lip_value, 0.1, 1e-12);
    EXPECT_THROW(fp::cm_window_norm(0.5, 0.5), fp::domain_error);
    EXPECT_THROW(fp::cm_window_norm(0.5, 0.25), fp::domain_error);
}

TEST(WindowNorm, PVarBound) {
    const double d4 = fp::d_p_lipschitz(4.0);
    EXPECT_NEAR(fp::lip_pvar_bound(4.0, 0.0, 1.0), d4, 1e-12);
    EXPECT_NEAR(fp::lip_pvar_bound(4.0, 0.0, 1.0 / 16.0), d4 / 2.0, 1e-12);
    EXPECT_LT(fp::lip_pvar_bound(4.0, 0.0, 1e-12), 1e-2);
    EXPECT_THROW(fp::lip_pvar_bound(2.0, 0.0, 1.0), fp::domain_error);
}

TEST(TailExperiment, StructureDeterminismAndOneSidedness) {
    const fp::DyadicTime h1(1, 2), h2(1, 1);
    const fp::TailReport r = fp::tail_experiment(
        4.0, 0.8, h1, h2, 8, 200, fp::default_r_grid(), fp::Seed{5});
    ASSERT_EQ(r.r_grid.size(), 5u);
    ASSERT_EQ(r.empirical_survival.size(), 5u);

    for (std::size_t i = 1; i < r.r_grid.size(); ++i) {
        EXPECT_LE(r.empirical_survival[i], r.empirical_survival[i - 1]);
    }
    for (std::size_t i = 0; i < r.r_grid.size(); ++i) {
        EXPECT_GT(r.bound[i], 0.0);
        const double binom_se = std::sqrt(r.bound[i] * (1.0 - r.bound[i]) /
                                          static_cast<double>(r.trials));
        EXPECT_LE(r.empirical_survival[i], r.bound[i] + 3.0 * binom_se);
        EXPECT_LE(r.deviation_survival[i], r.bound[i] + 3.0 * binom_se);
    }
    EXPECT_GT(r.norm_mean, 0.0);
    EXPECT_GT(r.norm_median, 0.0);
    EXPECT_EQ(r.moment_estimates.count(1.0), 1u);
    EXPECT_EQ(r.moment_estimates.count(2.0), 1u);
    EXPECT_NEAR(r.moment_estimates.at(1.0).first, r.norm_mean, 1e-12);

    // Bit-stable across repeat runs and across thread counts.
    const fp::TailReport r1 = fp::tail_experiment(
        4.0, 0.8, h1, h2, 8, 200, fp::default_r_grid(), fp::Seed{5}, 1);
    const fp::TailReport r4 = fp::tail_experiment(
        4.0, 0.8, h1, h2, 8, 200, fp::default_r_grid(), fp::Seed{5}, 4);
    EXPECT_EQ(r.empirical_survival, r1.empirical_survival);
    EXPECT_EQ(r1.norm_mean, r4.norm_mean);
    EXPECT_EQ(r1.empirical_survival, r4.empirical_survival);
}

TEST(TailExperiment, BoundColumnClosedForm) {
    EXPECT_NEAR(fp::gaussian_tail_bound(2.0),
                std::exp(-2.0) / (2.0 * std::sqrt(2.0 * std::numbers::pi)), 1e-15);
    EXPECT_THROW(fp::gaussian_tail_bound(0.0), fp::domain_error);
}

TEST(TailExperiment, Preconditions) {
    const fp::DyadicTime h1(1, 2), h2(1, 1);
    EXPECT_THROW(fp::tail_experiment(4.0, 0.8, h2, h1, 8, 200, fp::default_r_grid(),
                                     fp::Seed{1}),
                 fp::domain_error);
    EXPECT_THROW(fp::tail_experiment(4.0, 0.8, h1, h2, 8, 50, fp::default_r_grid(),
                                     fp::Seed{1}),
                 fp::domain_error);
    EXPECT_THROW(fp::tail_experiment(4.0, 0.8, fp::DyadicTime(1, 9), h2, 8, 200,
                                     fp::default_r_grid(), fp::Seed{1}),
                 fp::alignment_error);
    EXPECT_THROW(fp::tail_experiment(4.0, 0.7, h1, h2, 8, 200, fp::default_r_grid(),
                                     fp::Seed{1}),
                 fp::domain_error);
}

TEST(TailExperiment, NormalizedZIsScaleCovariant) {
    // Halving h2 - h1 with the level shifted by one, on the Brownian-rescaled
    // diff sequence (factor 2^{1/p - 1/2}, collinear midpoints inserted),
    // reproduces Z exactly: the normalizer exponent absorbs the rescaling.
    const double p = 4.0;
    const fp::Constants k = fp::d_constants(0.8, 0.8, p, p);
    const int level = 8;
    const fp::SamplePath path = fp::sample(level, fp::Seed{321});
    const fp::DyadicTime h1(1, 2), h2(1, 1);
    const std::vector<double> g = fp::frame_diff(path, h1, h2);

    const double width = 0.25;
    const double z = fp::pvar_norm(g, p) / (k.d2 * std::pow(width, 0.5 - 1.0 / p)) -
                     k.d1;

    const double c = std::exp2(1.0 / p - 0.5);
    std::vector<double> rescaled;
    rescaled.reserve(2 * g.size() - 1);
    for (std::size_t j = 0; j + 1 < g.size(); ++j) {
        rescaled.push_back(c * g[j]);
        rescaled.push_back(c * 0.5 * (g[j] + g[j + 1]));
    }
    rescaled.push_back(c * g.back());

    const double z_half =
        fp::pvar_norm(rescaled, p) /
            (k.d2 * std::pow(width / 2.0, 0.5 - 1.0 / p)) - k.d1;
    EXPECT_NEAR(z_half, z, 1e-9 * (std::abs(z) + 1.0));
}
