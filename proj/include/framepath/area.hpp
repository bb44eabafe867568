#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <utility>
#include <vector>

#include "framepath/dyadic.hpp"
#include "framepath/errors.hpp"
#include "framepath/io.hpp"
#include "framepath/kahan.hpp"
#include "framepath/parallel.hpp"
#include "framepath/rng.hpp"
#include "framepath/sampler.hpp"

namespace framepath {

inline constexpr std::uint64_t kDefaultMaxSurfaceEntries = std::uint64_t{1} << 22;
inline constexpr int kRegionEnumerationMaxLevel = 6;

namespace detail {

// Shared index geometry of one area evaluation: s < t dyadic at level n,
// increments taken at scale 2^{-n} on the [-1, 1] grid of a path sampled
// at level >= n. Increment index k covers [k/2^n - 1, (k+1)/2^n - 1];
// the s-window occupies k in [sigma, sigma + 2^n - 1] with sigma = 2^n s,
// the t-window k in [tau, tau + 2^n - 1] with tau = 2^n t.
struct AreaGrid {
    int n = 0;
    std::uint64_t stride = 1;  // path grid cells per scale-n cell
    std::uint64_t cells = 0;   // 2^n
    std::uint64_t sigma = 0;
    std::uint64_t tau = 0;
    const SamplePath* path = nullptr;

    double at(std::uint64_t k) const { return path->values[k * stride]; }
    double inc(std::uint64_t k) const {
        return path->values[(k + 1) * stride] - path->values[k * stride];
    }
};

inline AreaGrid make_area_grid(const SamplePath& path, const DyadicTime& s,
                               const DyadicTime& t, int n) {
    if (n < 1 || n > path.level) {
        throw domain_error("area: requires 1 <= n <= path level");
    }
    if (!(s < t)) {
        throw domain_error("area: requires s < t (use antisymmetry at the caller)");
    }
    if (dyadic_sub(s, t) < DyadicTime(1, n)) {
        throw resolution_error("area: requires t - s >= 2^{-n}");
    }
    if (!s.aligned_to_level(n) || !t.aligned_to_level(n)) {
        throw alignment_error("area: s, t must be dyadic at <= n");
    }
    AreaGrid g;
    g.n = n;
    g.stride = std::uint64_t{1} << (path.level - n);
    g.cells = std::uint64_t{1} << n;
    g.sigma = s.numerator_at_level(n);
    g.tau = t.numerator_at_level(n);
    g.path = &path;
    return g;
}

}  // namespace detail

// Dyadic double sum for the Levy area of the frame process,
//   (1/2) sum_{v=1}^{2^n - 1} sum_{u=0}^{v-1}
//         (B_{(u+1)/2^n - 1 + s} - B_{u/2^n - 1 + s}) (B_{(v+1)/2^n - 1 + t} - B_{v/2^n - 1 + t})
//   - (the same sum with s and t swapped),
// evaluated in O(2^n) by telescoping the inner sums to path increments.
inline double area_double_sum(const SamplePath& path, const DyadicTime& s,
                              const DyadicTime& t, int n) {
    const detail::AreaGrid g = detail::make_area_grid(path, s, t, n);
    KahanSum acc;
    for (std::uint64_t v = 1; v < g.cells; ++v) {
        const double prefix_s = g.at(g.sigma + v) - g.at(g.sigma);
        const double prefix_t = g.at(g.tau + v) - g.at(g.tau);
        acc.add(prefix_s * g.inc(g.tau + v));
        acc.add(-prefix_t * g.inc(g.sigma + v));
    }
    return 0.5 * acc.value();
}

// The four index regions of the rearranged double sum. A pair (a, b)
// couples the scale-n increment starting at a/2^n - 1 with the one
// starting at b/2^n - 1; in window-shifted coordinates the point is
// ((a - 2^n)/2^n, (b - 2^n)/2^n). rho_plus collects the products of the
// direct orientation (b - a > tau - sigma), the three rho_minus sets
// partition the swapped orientation (b - a < tau - sigma) into
// above-diagonal, below-diagonal and diagonal (quadratic variation)
// pairs. The strip b - a = tau - sigma belongs to neither orientation.
struct RegionSets {
    int n = 0;
    DyadicTime s, t;
    std::uint64_t sigma = 0;
    std::uint64_t tau = 0;

    std::vector<std::pair<std::uint64_t, std::uint64_t>> rho_plus;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rho_minus_1;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rho_minus_2;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rho_minus_3;

    // Closed-form cardinalities (valid at any n).
    std::uint64_t card_plus() const {
        const std::uint64_t c = std::uint64_t{1} << n;
        return c * (c - 1) / 2;
    }
    std::uint64_t card_minus_total() const { return card_plus(); }
    std::uint64_t card_minus_3() const {
        const std::uint64_t c = std::uint64_t{1} << n;
        const std::uint64_t gap = tau - sigma;
        return gap >= c ? 0 : c - gap;
    }
    std::uint64_t card_minus_2() const {
        const std::uint64_t w = card_minus_3();
        return w * (w - 1) / 2;
    }
    std::uint64_t card_minus_1() const {
        return card_minus_total() - card_minus_2() - card_minus_3();
    }
};

// Materializes the four sets from the region inequalities, scanning every
// increment pair on the [-1, 1] lattice. Exponential in n; the identity
// tests use it at small n, everything else works from the ranges.
// The first inequality of rho_minus_1 is strict: with equality admitted
// the set would pick up the strip b - a = tau - sigma, which the defining
// double sum never touches, and the rearrangement identity would fail.
inline RegionSets region_sets(const SamplePath& path, const DyadicTime& s,
                              const DyadicTime& t, int n,
                              int enumeration_max_level = kRegionEnumerationMaxLevel) {
    const detail::AreaGrid g = detail::make_area_grid(path, s, t, n);
    RegionSets out;
    out.n = n;
    out.s = s;
    out.t = t;
    out.sigma = g.sigma;
    out.tau = g.tau;
    if (n > enumeration_max_level) {
        throw capacity_error("region_sets: pair enumeration above level " +
                             std::to_string(enumeration_max_level));
    }

    const std::int64_t cells = std::int64_t{1} << n;
    const std::int64_t sig = static_cast<std::int64_t>(g.sigma);
    const std::int64_t tu = static_cast<std::int64_t>(g.tau);
    // Shifted coordinates: U = a - 2^n, V = b - 2^n.
    for (std::int64_t U = -cells; U < cells; ++U) {
        for (std::int64_t V = -cells; V < cells; ++V) {
            const auto a = static_cast<std::uint64_t>(U + cells);
            const auto b = static_cast<std::uint64_t>(V + cells);
            const bool v_in_t_window = (tu - cells) <= V && V <= tu - 1;
            if ((U + 1) + tu <= V + sig && U >= sig - cells && v_in_t_window) {
                out.rho_plus.emplace_back(a, b);
            }
            const bool u_in_s_window = (sig - cells) <= U && U <= sig - 1;
            if (U + tu > V + sig && V >= std::max(tu - cells, U + 1) && u_in_s_window) {
                out.rho_minus_1.emplace_back(a, b);
            }
            if ((tu - cells) <= V && V <= U - 1 && (tu - cells) <= U && U <= sig - 1) {
                out.rho_minus_2.emplace_back(a, b);
            }
            if (U == V && (tu - cells) <= U && U <= sig - 1) {
                out.rho_minus_3.emplace_back(a, b);
            }
        }
    }
    return out;
}

// Signed half-sums over the four regions. `parts` carries the un-halved
// partial sums; rho_minus_3 is the realized quadratic variation over
// [t-1, s - 2^{-n}]. The inner sums telescope, so the cost is O(2^n).
struct AreaParts {
    double rho_plus = 0.0;
    double rho_minus_1 = 0.0;
    double rho_minus_2 = 0.0;
    double rho_minus_3 = 0.0;
};

struct AreaByRegions {
    double value = 0.0;
    AreaParts parts;
};

inline AreaByRegions area_by_regions(const SamplePath& path, const DyadicTime& s,
                                     const DyadicTime& t, int n) {
    const detail::AreaGrid g = detail::make_area_grid(path, s, t, n);
    const std::uint64_t gap = g.tau - g.sigma;

    KahanSum plus;
    for (std::uint64_t b = g.tau; b < g.tau + g.cells; ++b) {
        plus.add((g.at(b - gap) - g.at(g.sigma)) * g.inc(b));
    }
    KahanSum minus1;
    for (std::uint64_t a = g.sigma; a < g.sigma + g.cells; ++a) {
        minus1.add((g.at(a + gap) - g.at(std::max(g.tau, a + 1))) * g.inc(a));
    }
    KahanSum minus2, minus3;
    for (std::uint64_t a = g.tau; a + 1 <= g.sigma + g.cells; ++a) {
        minus2.add((g.at(a) - g.at(g.tau)) * g.inc(a));
        const double d = g.inc(a);
        minus3.add(d * d);
    }

    AreaByRegions out;
    out.parts.rho_plus = plus.value();
    out.parts.rho_minus_1 = minus1.value();
    out.parts.rho_minus_2 = minus2.value();
    out.parts.rho_minus_3 = minus3.value();
    out.value = 0.5 * (out.parts.rho_plus - out.parts.rho_minus_1 -
                       out.parts.rho_minus_2 - out.parts.rho_minus_3);
    return out;
}

// Ito-sum assembly of the representation
//   A(s, t) = 1/2 int_{t-1}^t B_{v-(t-s)} dB_v - 1/2 B_{s-1}(B_t - B_{t-1})
//           - 1/2 int_{t-1}^s B_v dB_v   + 1/2 B_{t-1}(B_s - B_{t-1})
//           - 1/2 <B, B>_{t-1}^s
//           + 1/2 int_{1-s}^{2-s} Bh_{v-(t-s)} dBh_v
//           - 1/2 int_{1-s}^{2-t} Bh_v dBh_v - 1/2 Bh_{2-t}(Bh_{2-s} - Bh_{2-t}),
// all integrals realized as left-endpoint Riemann sums at resolution
// 2^{-n} with limits taken from the region telescopes, Bh_u = B_1 -
// B_{1-u}. In exact mode the quadratic-variation term keeps the realized
// sum over rho_minus_3 and the total reproduces the double sum exactly at
// finite n; analytic mode substitutes the limit 1 - t + s and reports the
// O(2^{-n/2}) gap.
enum class QvMode { realized, analytic };

struct ItoFormResult {
    double value = 0.0;
    double qv_realized = 0.0;
    double qv_analytic = 0.0;
    double discrepancy = 0.0;  // analytic value minus exact value

    // The eight assembled terms, in the order of the representation:
    // shifted Ito sum, boundary product, plain Ito sum, boundary product,
    // then the three reversed-time terms. terms[0] + terms[1] collects
    // rho_plus / 2, terms[2] + terms[3] collects -rho_minus_2 / 2, and
    // terms[5] + terms[6] + terms[7] collects -rho_minus_1 / 2; the
    // quadratic-variation slot terms[4] depends on the mode.
    double terms[8] = {0, 0, 0, 0, 0, 0, 0, 0};
};

inline ItoFormResult area_ito_form(const SamplePath& path, const DyadicTime& s,
                                   const DyadicTime& t, int n,
                                   QvMode mode = QvMode::realized) {
    const detail::AreaGrid g = detail::make_area_grid(path, s, t, n);
    const std::uint64_t gap = g.tau - g.sigma;
    const std::uint64_t cells = g.cells;
    const ReversedPath rev = reverse(path);
    const auto rat = [&](std::uint64_t m) { return rev.values[m * g.stride]; };
    const auto rinc = [&](std::uint64_t m) {
        return rev.values[(m + 1) * g.stride] - rev.values[m * g.stride];
    };

    // Forward-time terms.
    KahanSum ito_shifted;  // int_{t-1}^t B_{v-(t-s)} dB_v
    for (std::uint64_t b = g.tau; b < g.tau + cells; ++b) {
        ito_shifted.add(g.at(b - gap) * g.inc(b));
    }
    const double t1 = 0.5 * ito_shifted.value();
    const double t2 = -0.5 * g.at(g.sigma) * (g.at(g.tau + cells) - g.at(g.tau));

    KahanSum ito_plain;  // int_{t-1}^s B_v dB_v
    KahanSum qv;
    for (std::uint64_t a = g.tau; a + 1 <= g.sigma + cells; ++a) {
        ito_plain.add(g.at(a) * g.inc(a));
        const double d = g.inc(a);
        qv.add(d * d);
    }
    const double t3 = -0.5 * ito_plain.value();
    const double t4 = 0.5 * g.at(g.tau) * (g.at(g.sigma + cells) - g.at(g.tau));

    const double qv_realized = qv.value();
    const double qv_analytic = 1.0 - t.value() + s.value();

    // Reversed-time terms; m ranges over the reflected s-window.
    const std::uint64_t m_lo = cells - g.sigma;          // 2^n (1 - s)
    const std::uint64_t m_hi = 2 * cells - g.sigma - 1;  // 2^n (2 - s) - 1
    const std::uint64_t m_t = 2 * cells - g.tau;         // 2^n (2 - t)

    KahanSum rito_shifted;  // int_{1-s}^{2-s} Bh_{v-(t-s)} dBh_v
    for (std::uint64_t m = m_lo; m <= m_hi; ++m) {
        rito_shifted.add(rat(m + 1 - gap) * rinc(m));
    }
    const double t6 = 0.5 * rito_shifted.value();

    KahanSum rito_plain;  // int_{1-s}^{2-t} Bh_v dBh_v
    for (std::uint64_t m = m_lo; m <= m_t; ++m) {
        rito_plain.add(rat(m) * rinc(m));
    }
    const double t7 = -0.5 * rito_plain.value();
    const double t8 = -0.5 * rat(m_t) * (rat(m_hi + 1) - rat(m_t + 1));

    const double stochastic = t1 + t2 + t3 + t4 + t6 + t7 + t8;
    ItoFormResult out;
    out.qv_realized = qv_realized;
    out.qv_analytic = qv_analytic;
    out.discrepancy = 0.5 * (qv_realized - qv_analytic);
    const double t5 =
        -0.5 * (mode == QvMode::realized ? qv_realized : qv_analytic);
    out.value = stochastic + t5;
    out.terms[0] = t1;
    out.terms[1] = t2;
    out.terms[2] = t3;
    out.terms[3] = t4;
    out.terms[4] = t5;
    out.terms[5] = t6;
    out.terms[6] = t7;
    out.terms[7] = t8;
    return out;
}

// Upper-triangle store of A(s, t) over the level-m knots k/2^m,
// 0 <= k < 2^m. Reads below the diagonal negate, the diagonal itself is 0.
struct AreaSurface {
    int grid_level = 0;
    int sum_level = 0;
    int source_level = 0;
    Seed seed;
    std::vector<double> upper;  // packed row-major, i < j

    std::uint64_t knots() const { return std::uint64_t{1} << grid_level; }

    std::size_t pack(std::uint64_t i, std::uint64_t j) const {
        const std::uint64_t k = knots();
        return static_cast<std::size_t>(i * (2 * k - i - 1) / 2 + (j - i - 1));
    }

    // A(i/2^m, j/2^m) with antisymmetry enforced on read.
    double at(std::uint64_t i, std::uint64_t j) const {
        if (i >= knots() || j >= knots()) throw bounds_error("AreaSurface: knot out of range");
        if (i == j) return 0.0;
        return i < j ? upper[pack(i, j)] : -upper[pack(j, i)];
    }
};

inline AreaSurface area_surface(const SamplePath& path, int m, int n,
                                unsigned threads = 1,
                                std::uint64_t max_entries = kDefaultMaxSurfaceEntries) {
    if (m < 1 || m > n || n > path.level) {
        throw domain_error("area_surface: requires 1 <= m <= n <= path level");
    }
    const std::uint64_t k = std::uint64_t{1} << m;
    const std::uint64_t entries = k * (k - 1) / 2;
    if (entries > max_entries) {
        throw capacity_error("area_surface: " + std::to_string(entries) +
                             " entries exceed the cap");
    }
    AreaSurface surf;
    surf.grid_level = m;
    surf.sum_level = n;
    surf.source_level = path.level;
    surf.seed = path.seed;
    surf.upper.resize(static_cast<std::size_t>(entries));

    std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
    cells.reserve(entries);
    for (std::uint64_t i = 0; i + 1 < k; ++i) {
        for (std::uint64_t j = i + 1; j < k; ++j) {
            cells.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
    }
    parallel_for(cells.size(), threads, [&](std::size_t c) {
        const auto [i, j] = cells[c];
        surf.upper[surf.pack(i, j)] =
            area_double_sum(path, DyadicTime(i, m), DyadicTime(j, m), n);
    });
    return surf;
}

// CSV dump, header `s,t,area`, upper triangle only.
inline void write_csv(const AreaSurface& surf, std::ostream& out) {
    out << "s,t,area\n";
    const std::uint64_t k = surf.knots();
    for (std::uint64_t i = 0; i + 1 < k; ++i) {
        for (std::uint64_t j = i + 1; j < k; ++j) {
            out << format_g17(DyadicTime(i, surf.grid_level).value()) << ','
                << format_g17(DyadicTime(j, surf.grid_level).value()) << ','
                << format_g17(surf.at(i, j)) << '\n';
        }
    }
}

// Ensemble statistics of A(s - delta, s) and A(s, s - delta) at shrinking
// dyadic offsets delta = 2^{-k}; the above-diagonal means approach -1/2,
// the below-diagonal means +1/2 by antisymmetry.
struct DiagonalReport {
    DyadicTime s;
    int sum_level = 0;
    std::uint64_t trials = 0;
    std::vector<double> offsets;      // delta values
    std::vector<double> mean_above;   // A(s - delta, s)
    std::vector<double> se_above;
    std::vector<double> mean_below;   // A(s, s - delta)
    std::vector<double> se_below;
};

inline DiagonalReport diagonal_limit(
    const std::function<SamplePath(std::uint64_t)>& path_for_trial,
    std::uint64_t trials, const DyadicTime& s, const std::vector<int>& offset_exponents,
    int n, unsigned threads = 1) {
    if (trials < 1) throw domain_error("diagonal_limit: requires trials >= 1");
    std::vector<DyadicTime> lows;
    DiagonalReport report;
    report.s = s;
    report.sum_level = n;
    report.trials = trials;
    for (int k : offset_exponents) {
        if (k < 0 || k > n) {
            throw resolution_error("diagonal_limit: offset 2^{-k} finer than 2^{-n}");
        }
        const DyadicTime delta(1, k);
        if (!(delta <= s)) {
            throw domain_error("diagonal_limit: requires s - 2^{-k} >= 0");
        }
        lows.push_back(dyadic_sub(delta, s));
        report.offsets.push_back(delta.value());
    }

    std::vector<std::vector<double>> values(offset_exponents.size(),
                                            std::vector<double>(trials));
    parallel_for(trials, threads, [&](std::size_t i) {
        const SamplePath path = path_for_trial(i);
        for (std::size_t o = 0; o < lows.size(); ++o) {
            values[o][i] = area_double_sum(path, lows[o], s, n);
        }
    });

    for (std::size_t o = 0; o < lows.size(); ++o) {
        double mean = 0.0;
        for (double v : values[o]) mean += v;
        mean /= static_cast<double>(trials);
        double var = 0.0;
        for (double v : values[o]) var += (v - mean) * (v - mean);
        var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;
        const double se = std::sqrt(var / static_cast<double>(trials));
        report.mean_above.push_back(mean);
        report.se_above.push_back(se);
        report.mean_below.push_back(-mean);
        report.se_below.push_back(se);
    }
    return report;
}

inline DiagonalReport diagonal_limit(Seed seed, std::uint64_t trials,
                                     const DyadicTime& s,
                                     const std::vector<int>& offset_exponents, int n,
                                     unsigned threads = 1) {
    return diagonal_limit(
        [seed, n](std::uint64_t i) { return sample(n, trial_seed(seed, i)); },
        trials, s, offset_exponents, n, threads);
}

// Levy area of a planar bounded-variation (polygonal) path: the oriented
// area between the path and its chord,
//   (1/2) sum_i (f_i - f_0)(g_{i+1} - g_i) - (g_i - g_0)(f_{i+1} - f_i).
inline double bv2d_levy_area(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw shape_error("bv2d_levy_area: length mismatch");
    if (xs.size() < 2) throw shape_error("bv2d_levy_area: need at least 2 points");
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        acc.add((xs[i] - xs[0]) * (ys[i + 1] - ys[i]));
        acc.add(-(ys[i] - ys[0]) * (xs[i + 1] - xs[i]));
    }
    return 0.5 * acc.value();
}

}  // namespace framepath
