#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "framepath/constants.hpp"
#include "framepath/dyadic.hpp"
#include "framepath/errors.hpp"
#include "framepath/pvar.hpp"
#include "framepath/rng.hpp"
#include "framepath/sampler.hpp"

namespace framepath {

// Dyadic domination functional of the pathwise bound:
//   c(alpha, p) * ( sum_{n=0}^{L - n(h)} (n+1)^{alpha p}
//                   sum_k |f((k+1)/2^{n+n(h)} - 1) - f(k/2^{n+n(h)} - 1)|^p )^{1/p},
// truncated at the path's grid level L. For the grid restriction of
// T_h - T_0 (what pvar_exact sees) the truncated sum already dominates:
// grid-to-grid increments decompose over dyadic scales no finer than L.
inline double dyadic_bound(const SamplePath& path, const DyadicTime& h, double p,
                           double alpha, double tol = 1e-10) {
    if (h.is_zero()) throw domain_error("dyadic_bound: h must be positive");
    const int scale0 = n_of_h(h);
    if (scale0 > path.level) {
        throw domain_error("dyadic_bound: n(h) exceeds the path grid level");
    }
    const double c = c_alpha_p(alpha, p, tol);
    const int ip = detail::small_integer_exponent(p);

    double total = 0.0;
    for (int n = 0; n + scale0 <= path.level; ++n) {
        const int j = n + scale0;
        const std::uint64_t stride = std::uint64_t{1} << (path.level - j);
        const std::uint64_t cells = std::uint64_t{1} << (j + 1);
        double level_sum = 0.0;
        for (std::uint64_t k = 0; k < cells; ++k) {
            const double inc =
                path.values[(k + 1) * stride] - path.values[k * stride];
            level_sum += detail::pow_abs(inc, p, ip);
        }
        total += std::pow(static_cast<double>(n + 1), alpha * p) * level_sum;
    }
    return c * std::pow(total, 1.0 / p);
}

// Numeric probe of lower semicontinuity of V_p. The perturbations f_n
// insert midpoints displaced off the polygonal interpolant by at most
// 2^{-n}, so f_n -> f uniformly while every original vertex survives:
// uniform convergence cannot collapse the variation below V_p(f), up to
// the amplitude-driven slack.
struct LscReport {
    double base_variation = 0.0;
    std::vector<double> perturbed_variations;
    double min_perturbed = 0.0;
    double slack = 0.0;
    bool holds = false;
};

inline LscReport lsc_probe(std::span<const double> seq, double p, int refinements) {
    if (refinements < 1) throw domain_error("lsc_probe: refinements must be >= 1");
    const Seed noise_seed{0x4c53435f50524f42ull};
    LscReport report;
    report.base_variation = pvar_exact(seq, p).value;

    std::vector<double> perturbed;
    for (int n = 1; n <= refinements; ++n) {
        const double amplitude = std::ldexp(1.0, -n);
        perturbed.clear();
        perturbed.reserve(2 * seq.size() - 1);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            perturbed.push_back(seq[i]);
            if (i + 1 < seq.size()) {
                const double xi =
                    2.0 * rng_uniform(noise_seed, RngStream::noise,
                                      static_cast<std::uint32_t>(n), i) - 1.0;
                perturbed.push_back(0.5 * (seq[i] + seq[i + 1]) + amplitude * xi);
            }
        }
        report.perturbed_variations.push_back(pvar_exact(perturbed, p).value);
    }
    report.min_perturbed = *std::min_element(report.perturbed_variations.begin(),
                                             report.perturbed_variations.end());

    double sup = 0.0;
    for (double x : seq) sup = std::max(sup, std::abs(x));
    report.slack = std::exp2(p) * p * std::pow(sup + 1.0, p - 1.0) *
                   std::ldexp(1.0, -refinements);
    report.holds = report.base_variation <= report.min_perturbed + report.slack;
    return report;
}

}  // namespace framepath
