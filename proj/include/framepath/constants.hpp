#pragma once

#include <cmath>
#include <numbers>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "framepath/errors.hpp"

namespace framepath {

namespace detail {

// zeta(q) for q > 1 by Euler-Maclaurin: partial sum, integral tail
// N^{1-q}/(q-1), and Bernoulli corrections. x^{-q} is completely
// monotone, so the remainder is bounded by the first omitted term.
inline double zeta_em(double q, double tol) {
    // B_{2k}/(2k)! for k = 1..4.
    static constexpr double kBern[4] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                        -1.0 / 1209600.0};
    std::size_t n = 16;
    for (;;) {
        double s = 0.0;
        for (std::size_t i = n; i >= 1; --i) {
            s += std::pow(static_cast<double>(i), -q);
        }
        const double dn = static_cast<double>(n);
        double value = s + std::pow(dn, 1.0 - q) / (q - 1.0) - 0.5 * std::pow(dn, -q);
        double rising = q;           // q (q+1) ... (q+2k-2)
        double power = std::pow(dn, -q - 1.0);
        double omitted = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double term = kBern[k] * rising * power;
            if (k < 3) {
                value += term;
                rising *= (q + 2 * k + 1.0) * (q + 2 * k + 2.0);
                power /= dn * dn;
            } else {
                omitted = std::abs(term);
            }
        }
        if (omitted < tol || n >= (std::size_t{1} << 20)) return value;
        n *= 2;
    }
}

// sum_{n=n0}^inf (n+1)^g r^n for 0 < r < 1, truncated once the geometric
// tail bound term_{N+1} / (1 - ratio_N) drops below tol.
inline double power_weighted_geometric_series(double g, double r, double tol,
                                              int n0 = 0) {
    double s = 0.0;
    for (int n = n0;; ++n) {
        const double term = std::pow(static_cast<double>(n + 1), g) *
                            std::pow(r, static_cast<double>(n));
        s += term;
        const double ratio =
            std::pow(static_cast<double>(n + 2) / static_cast<double>(n + 1), g) * r;
        if (ratio < 1.0) {
            const double tail = term * ratio / (1.0 - ratio);
            if (tail < tol) return s;
        }
        if (n > 1000000) {
            throw domain_error("series truncation failed to certify the tail");
        }
    }
}

}  // namespace detail

// c(alpha, p) = (sum_{n>=1} n^{-alpha p/(p-1)})^{(p-1)/p}; the inner sum is
// evaluated with absolute error below tol.
inline double c_alpha_p(double alpha, double p, double tol = 1e-10) {
    if (!(p > 1.0)) throw domain_error("c_alpha_p: requires p > 1");
    if (!(tol > 0.0)) throw domain_error("c_alpha_p: requires tol > 0");
    const double q = alpha * p / (p - 1.0);
    if (!(q > 1.0)) {
        throw domain_error("c_alpha_p: divergent series, requires alpha > 1 - 1/p");
    }
    return std::pow(detail::zeta_em(q, tol), (p - 1.0) / p);
}

// Both sides of (sum |a_i|)^p <= c(alpha,p)^p sum i^{alpha p} |a_i|^p.
inline std::pair<double, double> hoelder_seq_bound_check(std::span<const double> a,
                                                         double alpha, double p,
                                                         double tol = 1e-10) {
    const double c = c_alpha_p(alpha, p, tol);
    double l1 = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        l1 += std::abs(a[i]);
        weighted += std::pow(static_cast<double>(i + 1), alpha * p) *
                    std::pow(std::abs(a[i]), p);
    }
    return {std::pow(l1, p), std::pow(c, p) * weighted};
}

// d(alpha, p) = 2^{p/2} (4 + 2^{(p-1)/p})^p c(alpha,p)^p sqrt(2^p/pi)
//               Gamma((p+1)/2) sum_{n>=series_start} (n+1)^{alpha p} 2^{n(1-p/2)}.
// The statement prints the series from n = 1, its proof sums from n = 0;
// the default follows the proof (the larger constant).
inline double d_alpha_p_constant(double alpha, double p, double tol = 1e-10,
                                 int series_start = 0) {
    if (!(p > 2.0)) throw domain_error("d_alpha_p: requires p > 2");
    if (!(alpha > 1.0 - 1.0 / p)) {
        throw domain_error("d_alpha_p: requires alpha > 1 - 1/p");
    }
    const double c = c_alpha_p(alpha, p, tol);
    const double series = detail::power_weighted_geometric_series(
        alpha * p, std::exp2(1.0 - 0.5 * p), tol, series_start);
    return std::exp2(0.5 * p) * std::pow(4.0 + std::exp2((p - 1.0) / p), p) *
           std::pow(c, p) * std::sqrt(std::exp2(p) / std::numbers::pi) *
           std::tgamma(0.5 * (p + 1.0)) * series;
}

// d_p = 2^{1/p + 1/2} (1 + 2^{p/2})^{1/p}, the Cameron-Martin Lipschitz
// constant of the p-variation functional of a frame increment.
inline double d_p_lipschitz(double p) {
    if (!(p > 2.0)) throw domain_error("d_p_lipschitz: requires p > 2");
    return std::exp2(1.0 / p + 0.5) * std::pow(1.0 + std::exp2(0.5 * p), 1.0 / p);
}

// Closed-form constants of the Hoelder moment bound and the tail estimate,
// at one parameter tuple.
struct Constants {
    double alpha = 0.0;
    double beta = 0.0;
    double p = 0.0;
    double pprime = 0.0;

    double c_alpha_p = 0.0;
    double d_alpha_p = 0.0;               // series from n = 0
    double d_alpha_beta_p_pprime = 0.0;   // moment-bound constant for E[||.||_p^{p'}]
    double d_p_lip = 0.0;
    double d1 = 0.0;                      // d(alpha,p)^{1/p} / d_p
    double d2 = 0.0;                      // 2 d_p
};

inline Constants d_constants(double alpha, double beta, double p, double pprime,
                             double tol = 1e-10) {
    if (!(p > 2.0)) throw domain_error("d_constants: requires p > 2");
    if (!(pprime > 2.0)) throw domain_error("d_constants: requires p' > 2");
    if (!(alpha > 1.0 - 1.0 / p)) {
        throw domain_error("d_constants: requires alpha > 1 - 1/p");
    }
    if (pprime > p && !(beta > 1.0 - p / pprime)) {
        throw domain_error("d_constants: requires beta > 1 - p/p' when p' > p");
    }

    Constants k;
    k.alpha = alpha;
    k.beta = beta;
    k.p = p;
    k.pprime = pprime;
    k.c_alpha_p = c_alpha_p(alpha, p, tol);
    k.d_alpha_p = d_alpha_p_constant(alpha, p, tol);
    if (pprime > p) {
        const double r = pprime / p;
        const double series = detail::power_weighted_geometric_series(
            alpha * pprime + beta * r, std::exp2((1.0 / p - 0.5) * pprime), tol);
        k.d_alpha_beta_p_pprime =
            std::exp2(0.5 * pprime) *
            std::pow(2.0 * (2.0 + std::exp2(-1.0 / p)) * k.c_alpha_p, pprime) *
            std::pow(c_alpha_p(beta, r, tol), r) *
            std::sqrt(std::exp2(pprime) / std::numbers::pi) *
            std::tgamma(0.5 * (pprime + 1.0)) * series;
    } else if (pprime == p) {
        k.d_alpha_beta_p_pprime = k.d_alpha_p;
    } else {
        // Lyapunov case p > p' > 2: the moment bound holds with d(alpha,p)^{p'/p}.
        k.d_alpha_beta_p_pprime = std::pow(k.d_alpha_p, pprime / p);
    }
    k.d_p_lip = d_p_lipschitz(p);
    k.d1 = std::pow(k.d_alpha_p, 1.0 / p) / k.d_p_lip;
    k.d2 = 2.0 * k.d_p_lip;
    return k;
}

}  // namespace framepath
