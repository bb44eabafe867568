#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "framepath/parallel.hpp"
#include "framepath/rng.hpp"
#include "framepath/sampler.hpp"

namespace fp = framepath;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST(Rng, InverseNormalCdfMatchesErfc) {
    EXPECT_DOUBLE_EQ(fp::inverse_normal_cdf(0.5), 0.0);
    EXPECT_NEAR(fp::inverse_normal_cdf(0.975), 1.9599639845400545, 1e-12);
    for (int i = 1; i < 1000; ++i) {
        const double u = i / 1000.0;
        const double z = fp::inverse_normal_cdf(u);
        EXPECT_NEAR(normal_cdf(z), u, 1e-12);
        EXPECT_NEAR(fp::inverse_normal_cdf(1.0 - u), -z, 1e-12);
    }
    // Deep tails still round-trip.
    for (double u : {1e-12, 1e-9, 1e-6, 1.0 - 1e-6, 1.0 - 1e-9}) {
        EXPECT_NEAR(normal_cdf(fp::inverse_normal_cdf(u)), u, 1e-9 * std::max(u, 1e-3));
    }
    EXPECT_THROW(fp::inverse_normal_cdf(0.0), fp::domain_error);
    EXPECT_THROW(fp::inverse_normal_cdf(1.0), fp::domain_error);
}

TEST(Rng, CounterDrawsArePureAndOrderFree) {
    const fp::Seed seed{0xDEADBEEFu};
    std::vector<double> forward(256), backward(256);
    for (std::size_t k = 0; k < 256; ++k) {
        forward[k] = fp::rng_gauss(seed, fp::RngStream::increments, 7, k);
    }
    for (std::size_t k = 256; k-- > 0;) {
        backward[k] = fp::rng_gauss(seed, fp::RngStream::increments, 7, k);
    }
    EXPECT_EQ(forward, backward);
    // Streams and levels separate the key space.
    EXPECT_NE(fp::rng_word(seed, fp::RngStream::increments, 7, 3),
              fp::rng_word(seed, fp::RngStream::bridge, 7, 3));
    EXPECT_NE(fp::rng_word(seed, fp::RngStream::increments, 7, 3),
              fp::rng_word(seed, fp::RngStream::increments, 8, 3));
}

TEST(Sampler, AnchorAndLength) {
    const fp::SamplePath p = fp::sample(0, fp::Seed{1});
    EXPECT_EQ(p.values.size(), 3u);
    EXPECT_EQ(p.values[0], 0.0);
    for (int level : {1, 3, 7}) {
        const fp::SamplePath q = fp::sample(level, fp::Seed{9});
        EXPECT_EQ(q.values.size(), (std::size_t{1} << (level + 1)) + 1);
        EXPECT_EQ(q.values[0], 0.0);
    }
}

TEST(Sampler, Deterministic) {
    const fp::SamplePath a = fp::sample(10, fp::Seed{42});
    const fp::SamplePath b = fp::sample(10, fp::Seed{42});
    EXPECT_EQ(a.values, b.values);
    const fp::SamplePath c = fp::sample(10, fp::Seed{43});
    EXPECT_NE(a.values, c.values);
}

TEST(Sampler, ParallelAndSerialIncrementsAgree) {
    const fp::Seed seed{77};
    const int level = 8;
    const std::size_t n = std::size_t{1} << (level + 1);
    std::vector<double> par(n), ser(n);
    fp::parallel_for(n, 4, [&](std::size_t k) {
        par[k] = fp::rng_gauss(seed, fp::RngStream::increments, level, k);
    });
    for (std::size_t k = 0; k < n; ++k) {
        ser[k] = fp::rng_gauss(seed, fp::RngStream::increments, level, k);
    }
    EXPECT_EQ(par, ser);
}

TEST(Sampler, EndToEndVarianceMatchesBrownianScaling) {
    // Var(f(1) - f(-1)) = 2 over an interval of length 2; MC oracle with a
    // 3-standard-error gate, deterministic under the fixed seed.
    const std::uint64_t trials = 10000;
    const fp::Seed seed{2024};
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const fp::SamplePath p = fp::sample(12, fp::trial_seed(seed, i));
        const double span = p.values.back() - p.values.front();
        sum += span;
        sumsq += span * span;
    }
    const double mean = sum / trials;
    const double var = (sumsq - trials * mean * mean) / (trials - 1);
    const double se = 2.0 * std::sqrt(2.0 / (trials - 1));
    EXPECT_NEAR(var, 2.0, 3.0 * se);
}

TEST(Sampler, IncrementVarianceScalingAndIndependence) {
    const std::uint64_t trials = 10000;
    const int level = 8;
    const fp::Seed seed{5150};
    double s1 = 0, s2 = 0, q1 = 0, q2 = 0, cross = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const fp::SamplePath p = fp::sample(level, fp::trial_seed(seed, i));
        const double a = fp::increment(p, 0, 1);
        const double b = fp::increment(p, 1, 2);
        s1 += a; s2 += b; q1 += a * a; q2 += b * b; cross += a * b;
    }
    const double var_a = (q1 - s1 * s1 / trials) / (trials - 1);
    const double expected = std::ldexp(1.0, -level);
    const double se_var = expected * std::sqrt(2.0 / (trials - 1));
    EXPECT_NEAR(var_a, expected, 3.0 * se_var);

    const double var_b = (q2 - s2 * s2 / trials) / (trials - 1);
    const double cov = (cross - s1 * s2 / trials) / (trials - 1);
    const double corr = cov / std::sqrt(var_a * var_b);
    EXPECT_NEAR(corr, 0.0, 3.0 / std::sqrt(static_cast<double>(trials)));
}

TEST(Sampler, RefinePreservesCoarseGridBitExactly) {
    const fp::SamplePath p0 = fp::sample(0, fp::Seed{3});
    const fp::SamplePath p1 = fp::refine(p0, fp::Seed{3});
    EXPECT_EQ(p1.level, 1);
    EXPECT_EQ(p1.values.size(), 5u);
    for (std::size_t k = 0; k < p0.values.size(); ++k) {
        EXPECT_EQ(p1.values[2 * k], p0.values[k]);
    }
    const fp::SamplePath p2a = fp::refine(p1, fp::Seed{3});
    EXPECT_EQ(p2a.level, 2);
    for (std::size_t k = 0; k < p1.values.size(); ++k) {
        EXPECT_EQ(p2a.values[2 * k], p1.values[k]);
    }
}

TEST(Sampler, BridgeMidpointVariance) {
    // Conditional variance of an inserted midpoint is 2^{-(level+2)}.
    const int level = 4;
    const fp::SamplePath base = fp::sample(level, fp::Seed{11});
    const std::uint64_t trials = 10000;
    const std::size_t mid = 1;  // first inserted midpoint
    double sum = 0, sumsq = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const fp::SamplePath r = fp::refine(base, fp::trial_seed(fp::Seed{99}, i));
        const double residual = r.values[mid] - 0.5 * (base.values[0] + base.values[1]);
        sum += residual;
        sumsq += residual * residual;
    }
    const double mean = sum / trials;
    const double var = (sumsq - trials * mean * mean) / (trials - 1);
    const double expected = std::ldexp(1.0, -(level + 2));
    const double se = expected * std::sqrt(2.0 / (trials - 1));
    EXPECT_NEAR(var, expected, 3.0 * se);
}

TEST(Sampler, ReverseAlgebra) {
    fp::SamplePath zero;
    zero.level = 3;
    zero.values.assign((1u << 4) + 1, 0.0);
    const fp::ReversedPath rz = fp::reverse(zero);
    for (double v : rz.values) EXPECT_EQ(v, 0.0);

    const fp::SamplePath ramp = fp::ramp_path(4);
    const fp::ReversedPath rr = fp::reverse(ramp);
    for (std::size_t k = 0; k < rr.values.size(); ++k) {
        EXPECT_DOUBLE_EQ(rr.values[k], std::ldexp(static_cast<double>(k), -4));
    }

    // reverse is an involution on anchored paths.
    const fp::SamplePath b = fp::sample(6, fp::Seed{8});
    const fp::ReversedPath once = fp::reverse(b);
    fp::SamplePath as_path;
    as_path.level = 6;
    as_path.values = once.values;
    const fp::ReversedPath twice = fp::reverse(as_path);
    for (std::size_t k = 0; k < b.values.size(); ++k) {
        EXPECT_NEAR(twice.values[k], b.values[k], 1e-12);
    }
}

TEST(Sampler, IncrementMatchesSubtraction) {
    const fp::SamplePath p = fp::sample(7, fp::Seed{21});
    EXPECT_EQ(fp::increment(p, 5, 5), 0.0);
    EXPECT_EQ(fp::increment(p, 0, p.last_index()), p.values.back());
    const fp::Seed seed{31337};
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t a = fp::rng_word(seed, fp::RngStream::noise, 0, 2 * trial) %
                                (p.last_index() + 1);
        const std::uint64_t b = fp::rng_word(seed, fp::RngStream::noise, 0, 2 * trial + 1) %
                                (p.last_index() + 1);
        const std::uint64_t lo = std::min(a, b), hi = std::max(a, b);
        EXPECT_EQ(fp::increment(p, lo, hi), p.values[hi] - p.values[lo]);
    }
    EXPECT_THROW(fp::increment(p, 3, 2), fp::bounds_error);
    EXPECT_THROW(fp::increment(p, 0, p.last_index() + 1), fp::bounds_error);
}

TEST(Sampler, CapacityAndDomainErrors) {
    EXPECT_THROW(fp::sample(40, fp::Seed{1}), fp::capacity_error);
    EXPECT_THROW(fp::sample(-1, fp::Seed{1}), fp::domain_error);
    const fp::SamplePath p = fp::sample(2, fp::Seed{1});
    EXPECT_THROW(fp::refine(p, fp::Seed{1}, 2), fp::capacity_error);
}

TEST(Sampler, CsvDump) {
    const fp::SamplePath p = fp::sample(1, fp::Seed{5});
    std::ostringstream out;
    fp::write_csv(p, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "k,x,f");
    std::getline(in, line);
    EXPECT_EQ(line, "0,-1,0");
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 5);
}
