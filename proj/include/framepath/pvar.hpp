#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "framepath/errors.hpp"

namespace framepath {

// Default cap on the O(N^2) exact p-variation: 2^13 + 1 points.
inline constexpr std::size_t kDefaultMaxPVarPoints = (std::size_t{1} << 13) + 1;

// p-variation of a discrete sequence together with an optimal dissection
// (original indices, endpoints included). `value` is the sup raised to
// 1/p; summing |increments|^p over `dissection` reproduces value^p.
struct PVarResult {
    double p = 0.0;
    double value = 0.0;
    std::vector<std::size_t> dissection;
};

namespace detail {

template <int IP>
inline double pow_abs_fixed(double d) {
    if constexpr (IP == 1) return std::abs(d);
    if constexpr (IP == 2) return d * d;
    if constexpr (IP == 3) return std::abs(d) * (d * d);
    if constexpr (IP == 4) { const double t = d * d; return t * t; }
    if constexpr (IP == 5) { const double t = d * d; return std::abs(d) * t * t; }
    if constexpr (IP == 6) { const double t = d * d; return t * t * t; }
    return 0.0;  // unreachable
}

inline int small_integer_exponent(double p) {
    const double r = std::round(p);
    if (r >= 1.0 && r <= 6.0 && p == r) return static_cast<int>(r);
    return 0;
}

inline double pow_abs(double d, double p, int ip) {
    switch (ip) {
        case 1: return pow_abs_fixed<1>(d);
        case 2: return pow_abs_fixed<2>(d);
        case 3: return pow_abs_fixed<3>(d);
        case 4: return pow_abs_fixed<4>(d);
        case 5: return pow_abs_fixed<5>(d);
        case 6: return pow_abs_fixed<6>(d);
        default: return std::pow(std::abs(d), p);
    }
}

// Indices of a strictly alternating extrema subsequence (endpoints kept).
// Dropping a point that does not reverse direction never lowers any
// dissection sum: |a+b|^p >= |a|^p + |b|^p for same-sign a, b and p >= 1,
// so the supremum over vertex subsets is preserved.
inline std::vector<std::size_t> alternating_extrema(std::span<const double> xs) {
    std::vector<std::size_t> keep;
    keep.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        keep.push_back(i);
        while (keep.size() >= 3) {
            const double a = xs[keep[keep.size() - 3]];
            const double b = xs[keep[keep.size() - 2]];
            const double c = xs[keep[keep.size() - 1]];
            if ((b - a) * (c - b) < 0.0) break;
            keep.erase(keep.end() - 2);
        }
    }
    return keep;
}

// Quadratic DP over the reduced points. V(i) = max_{j<i} V(j) + |x_i-x_j|^p
// is exact for discrete data: the sup over dissections of the polygonal
// interpolant is attained on vertex subsets. Ties take the first maximizer.
template <class PowFn>
inline PVarResult pvar_dp(std::span<const double> xs,
                          const std::vector<std::size_t>& pts, double p,
                          PowFn&& pw) {
    const std::size_t m = pts.size();
    std::vector<double> best(m, 0.0);
    std::vector<std::uint32_t> from(m, 0);
    for (std::size_t i = 1; i < m; ++i) {
        const double xi = xs[pts[i]];
        double b = -1.0;
        std::uint32_t arg = 0;
        for (std::size_t j = 0; j < i; ++j) {
            const double cand = best[j] + pw(xi - xs[pts[j]]);
            if (cand > b) {
                b = cand;
                arg = static_cast<std::uint32_t>(j);
            }
        }
        best[i] = b;
        from[i] = arg;
    }

    PVarResult out;
    out.p = p;
    out.value = std::pow(best[m - 1], 1.0 / p);
    std::vector<std::size_t> rev;
    for (std::size_t i = m - 1; i != 0; i = from[i]) rev.push_back(pts[i]);
    rev.push_back(pts[0]);
    out.dissection.assign(rev.rbegin(), rev.rend());
    return out;
}

inline void check_pvar_args(std::span<const double> seq, double p) {
    if (seq.size() < 2) throw shape_error("p-variation: need at least 2 points");
    if (!(p >= 1.0)) throw domain_error("p-variation: p must be >= 1");
}

}  // namespace detail

// Exact p-variation: sup over all dissections of (sum |increments|^p)^{1/p}.
inline PVarResult pvar_exact(std::span<const double> seq, double p,
                             std::size_t max_points = kDefaultMaxPVarPoints) {
    detail::check_pvar_args(seq, p);
    if (seq.size() > max_points) {
        throw capacity_error("pvar_exact: " + std::to_string(seq.size()) +
                             " points exceed the cap " + std::to_string(max_points));
    }
    const auto pts = detail::alternating_extrema(seq);
    const int ip = detail::small_integer_exponent(p);
    switch (ip) {
        case 1: return detail::pvar_dp(seq, pts, p, detail::pow_abs_fixed<1>);
        case 2: return detail::pvar_dp(seq, pts, p, detail::pow_abs_fixed<2>);
        case 3: return detail::pvar_dp(seq, pts, p, detail::pow_abs_fixed<3>);
        case 4: return detail::pvar_dp(seq, pts, p, detail::pow_abs_fixed<4>);
        case 5: return detail::pvar_dp(seq, pts, p, detail::pow_abs_fixed<5>);
        case 6: return detail::pvar_dp(seq, pts, p, detail::pow_abs_fixed<6>);
        default:
            return detail::pvar_dp(seq, pts, p,
                                   [p](double d) { return std::pow(std::abs(d), p); });
    }
}

// Exhaustive oracle: enumerates every index subset containing both
// endpoints. Test-sized inputs only.
inline PVarResult pvar_bruteforce(std::span<const double> seq, double p) {
    detail::check_pvar_args(seq, p);
    if (seq.size() > 20) {
        throw capacity_error("pvar_bruteforce: more than 20 points");
    }
    const std::size_t n = seq.size();
    const std::size_t inner = n - 2;
    const std::uint64_t masks = std::uint64_t{1} << inner;
    const int ip = detail::small_integer_exponent(p);

    double best = -1.0;
    std::uint64_t best_mask = 0;
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        double sum = 0.0;
        double prev = seq[0];
        for (std::size_t i = 0; i < inner; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                sum += detail::pow_abs(seq[i + 1] - prev, p, ip);
                prev = seq[i + 1];
            }
        }
        sum += detail::pow_abs(seq[n - 1] - prev, p, ip);
        if (sum > best) {
            best = sum;
            best_mask = mask;
        }
    }

    PVarResult out;
    out.p = p;
    out.value = std::pow(best, 1.0 / p);
    out.dissection.push_back(0);
    for (std::size_t i = 0; i < inner; ++i) {
        if (best_mask & (std::uint64_t{1} << i)) out.dissection.push_back(i + 1);
    }
    out.dissection.push_back(n - 1);
    return out;
}

// ||.||_p = ||.||_inf + V_p(.) on a grid sequence.
inline double pvar_norm(std::span<const double> seq, double p,
                        std::size_t max_points = kDefaultMaxPVarPoints) {
    double sup = 0.0;
    for (double x : seq) sup = std::max(sup, std::abs(x));
    return sup + pvar_exact(seq, p, max_points).value;
}

}  // namespace framepath
