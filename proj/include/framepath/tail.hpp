#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <vector>

#include "framepath/constants.hpp"
#include "framepath/dyadic.hpp"
#include "framepath/errors.hpp"
#include "framepath/frame.hpp"
#include "framepath/io.hpp"
#include "framepath/parallel.hpp"
#include "framepath/pvar.hpp"
#include "framepath/rng.hpp"
#include "framepath/sampler.hpp"

namespace framepath {

// E[|B_t - B_s|^{p'}] = sqrt(2^{p'}/pi) Gamma((p'+1)/2) |t-s|^{p'/2}.
inline double gaussian_abs_moment(double pprime, double dt) {
    if (!(pprime > 0.0)) throw domain_error("gaussian_abs_moment: requires p' > 0");
    if (!(dt >= 0.0)) throw domain_error("gaussian_abs_moment: requires dt >= 0");
    return std::sqrt(std::exp2(pprime) / std::numbers::pi) *
           std::tgamma(0.5 * (pprime + 1.0)) * std::pow(dt, 0.5 * pprime);
}

// Gaussian survival bound (1 / (sqrt(2 pi) r)) exp(-r^2 / 2).
inline double gaussian_tail_bound(double r) {
    if (!(r > 0.0)) throw domain_error("gaussian_tail_bound: requires r > 0");
    return std::exp(-0.5 * r * r) / (std::sqrt(2.0 * std::numbers::pi) * r);
}

struct MomentCheck {
    double estimate = 0.0;
    double stderr_ = 0.0;
    double formula = 0.0;
};

// Monte-Carlo mean of |increment over dt|^{p'} against the closed form.
// The 3-standard-error agreement is the acceptance check, not a
// postcondition.
inline MomentCheck mc_moment_check(double pprime, double dt, int level,
                                   std::uint64_t trials, Seed seed,
                                   unsigned threads = 1) {
    if (trials < 2) throw domain_error("mc_moment_check: need trials >= 2 for a standard error");
    const double span_real = std::ldexp(dt, level);
    const double span_round = std::round(span_real);
    if (span_real != span_round || span_round < 0.0) {
        throw alignment_error("mc_moment_check: dt must be a multiple of 2^{-level}");
    }
    const auto span = static_cast<std::uint64_t>(span_round);

    std::vector<double> samples(trials);
    parallel_for(trials, threads, [&](std::size_t i) {
        const SamplePath path = sample(level, trial_seed(seed, i));
        samples[i] = std::pow(std::abs(increment(path, 0, span)), pprime);
    });

    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double s : samples) var += (s - mean) * (s - mean);
    var /= static_cast<double>(trials - 1);

    MomentCheck out;
    out.estimate = mean;
    out.stderr_ = std::sqrt(var / static_cast<double>(trials));
    out.formula = gaussian_abs_moment(pprime, dt);
    return out;
}

// Cameron-Martin Lipschitz norm of ||T_{h2} - T_{h1}||_inf. The norm is
// exactly sqrt(h2 - h1); the extremal direction g = 1_{[h1-1, h2-1)} /
// sqrt(h2 - h1) has unit Cameron-Martin norm and attains the sup at t = 0.
struct WindowNormCheck {
    double lip_value = 0.0;
    double extremal_cm_norm = 0.0;
    double extremal_sup = 0.0;
    double extremal_argmax = 0.0;
    bool ok = false;
};

inline WindowNormCheck cm_window_norm(double h1, double h2) {
    if (!(0.0 <= h1 && h1 < h2 && h2 <= 1.0)) {
        throw domain_error("cm_window_norm: requires 0 <= h1 < h2 <= 1");
    }
    const double width = h2 - h1;
    WindowNormCheck out;
    out.lip_value = std::sqrt(width);
    out.extremal_cm_norm = std::sqrt(width * (1.0 / width));
    // F(t) = |integral of g over [h1-1+t, h2-1+t)| = overlap length / sqrt(width).
    const auto window_integral = [&](double t) {
        return std::max(0.0, width - std::abs(t)) / std::sqrt(width);
    };
    const int grid = 1 << 12;
    double best = -1.0, argmax = 0.0;
    for (int j = 0; j <= grid; ++j) {
        const double t = static_cast<double>(j) / grid;
        const double v = window_integral(t);
        if (v > best) {
            best = v;
            argmax = t;
        }
    }
    out.extremal_sup = best;
    out.extremal_argmax = argmax;
    out.ok = std::abs(out.extremal_cm_norm - 1.0) <= 1e-12 &&
             std::abs(out.extremal_sup - out.lip_value) <= 1e-12 &&
             out.extremal_argmax == 0.0;
    return out;
}

// d_p (h2 - h1)^{1/2 - 1/p}: Lipschitz bound for the p-variation part.
inline double lip_pvar_bound(double p, double h1, double h2) {
    if (!(0.0 <= h1 && h1 < h2 && h2 <= 1.0)) {
        throw domain_error("lip_pvar_bound: requires 0 <= h1 < h2 <= 1");
    }
    return d_p_lipschitz(p) * std::pow(h2 - h1, 0.5 - 1.0 / p);
}

// Monte-Carlo verification data for the Gaussian tail estimate: Z = ||T_{h2} -
// T_{h1}||_p / (d2 (h2-h1)^{1/2-1/p}) - d1 against the Gaussian bound.
struct TailReport {
    double p = 0.0;
    double alpha = 0.0;
    DyadicTime h1, h2;
    int level = 0;
    std::uint64_t trials = 0;
    Seed seed;

    std::vector<double> r_grid;
    std::vector<double> empirical_survival;   // P(Z >= r)
    std::vector<double> bound;                // Gaussian tail bound at r
    std::vector<double> deviation_survival;   // P(F > 2 mean(F) + r Lip)
    std::map<double, std::pair<double, double>> moment_estimates;  // p' -> (mean, se)

    double d1 = 0.0;
    double d2 = 0.0;
    double normalizer = 0.0;   // d2 (h2-h1)^{1/2-1/p}
    double norm_mean = 0.0;    // empirical E[F]
    double norm_median = 0.0;  // empirical median of F (midpoint rule)
};

inline const std::vector<double>& default_r_grid() {
    static const std::vector<double> grid = {0.5, 1.0, 1.5, 2.0, 3.0};
    return grid;
}

inline TailReport tail_experiment(
    double p, double alpha, const DyadicTime& h1, const DyadicTime& h2, int level,
    std::uint64_t trials, const std::vector<double>& r_grid, Seed seed,
    unsigned threads = 1,
    const std::function<SamplePath(std::uint64_t)>& path_for_trial = {}) {
    if (!(h1 < h2)) throw domain_error("tail_experiment: requires h1 < h2");
    if (!h1.aligned_to_level(level) || !h2.aligned_to_level(level)) {
        throw alignment_error("tail_experiment: h1, h2 must be dyadic at <= level");
    }
    if (trials < 100) throw domain_error("tail_experiment: requires trials >= 100");
    for (double r : r_grid) {
        if (!(r > 0.0)) throw domain_error("tail_experiment: r grid must be positive");
    }

    const Constants k = d_constants(alpha, alpha, p, p);
    const double width = dyadic_sub(h1, h2).value();
    const double normalizer = k.d2 * std::pow(width, 0.5 - 1.0 / p);

    std::vector<double> norms(trials);
    parallel_for(trials, threads, [&](std::size_t i) {
        const SamplePath path =
            path_for_trial ? path_for_trial(i) : sample(level, trial_seed(seed, i));
        const std::vector<double> diff = frame_diff(path, h1, h2);
        norms[i] = pvar_norm(diff, p);
    });

    TailReport report;
    report.p = p;
    report.alpha = alpha;
    report.h1 = h1;
    report.h2 = h2;
    report.level = level;
    report.trials = trials;
    report.seed = seed;
    report.r_grid = r_grid;
    report.d1 = k.d1;
    report.d2 = k.d2;
    report.normalizer = normalizer;

    double mean = 0.0;
    for (double f : norms) mean += f;
    mean /= static_cast<double>(trials);
    report.norm_mean = mean;

    std::vector<double> sorted(norms);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    report.norm_median = (n % 2 == 1)
                             ? sorted[n / 2]
                             : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    for (double pprime : {1.0, 2.0}) {
        double m = 0.0;
        for (double f : norms) m += std::pow(f, pprime);
        m /= static_cast<double>(trials);
        double var = 0.0;
        for (double f : norms) {
            const double d = std::pow(f, pprime) - m;
            var += d * d;
        }
        var /= static_cast<double>(trials - 1);
        report.moment_estimates[pprime] = {m, std::sqrt(var / static_cast<double>(trials))};
    }

    for (double r : r_grid) {
        std::uint64_t hits = 0;
        std::uint64_t dev_hits = 0;
        for (double f : norms) {
            const double z = f / normalizer - k.d1;
            if (z >= r) ++hits;  // weak inequality: conservative one-sided count
            if (f > 2.0 * mean + r * normalizer) ++dev_hits;
        }
        report.empirical_survival.push_back(static_cast<double>(hits) /
                                            static_cast<double>(trials));
        report.deviation_survival.push_back(static_cast<double>(dev_hits) /
                                            static_cast<double>(trials));
        report.bound.push_back(gaussian_tail_bound(r));
    }
    return report;
}

// CSV serialization: header `r,survival,bound`.
inline void write_csv(const TailReport& report, std::ostream& out) {
    out << "r,survival,bound\n";
    for (std::size_t i = 0; i < report.r_grid.size(); ++i) {
        out << format_g17(report.r_grid[i]) << ','
            << format_g17(report.empirical_survival[i]) << ','
            << format_g17(report.bound[i]) << '\n';
    }
}

}  // namespace framepath
