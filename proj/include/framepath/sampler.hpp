#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "framepath/errors.hpp"
#include "framepath/io.hpp"
#include "framepath/rng.hpp"

namespace framepath {

// Default memory cap: level 24 is ~33M grid points.
inline constexpr int kDefaultMaxLevel = 24;

// Dyadic-grid discretization of one Brownian sample on [-1, 1], anchored
// at 0. Entry k holds f(k/2^n - 1) for k = 0 .. 2^{n+1}.
struct SamplePath {
    int level = 0;
    std::vector<double> values;
    Seed seed;

    std::size_t size() const { return values.size(); }
    std::uint64_t last_index() const { return std::uint64_t{1} << (level + 1); }

    // Grid abscissa of entry k, exact in double.
    double x_of(std::uint64_t k) const {
        return std::ldexp(static_cast<double>(k), -level) - 1.0;
    }
};

// B-hat on [0, 2]: entry k holds B_1 - B_{1 - k/2^n}.
struct ReversedPath {
    int level = 0;
    std::vector<double> values;
};

namespace detail {

inline void check_level(int level, int max_level) {
    if (level < 0) throw domain_error("sample: level must be >= 0");
    if (level > max_level) {
        throw capacity_error("sample: level " + std::to_string(level) +
                             " exceeds the configured cap " + std::to_string(max_level));
    }
}

}  // namespace detail

// Draws a path with 2^{level+1} i.i.d. N(0, 2^{-level}) increments
// accumulated from 0. Pure in (level, seed).
inline SamplePath sample(int level, Seed seed, int max_level = kDefaultMaxLevel) {
    detail::check_level(level, max_level);
    const std::uint64_t n_inc = std::uint64_t{1} << (level + 1);
    const double sigma = std::sqrt(std::ldexp(1.0, -level));
    SamplePath path;
    path.level = level;
    path.seed = seed;
    path.values.resize(n_inc + 1);
    path.values[0] = 0.0;
    double acc = 0.0;
    for (std::uint64_t k = 0; k < n_inc; ++k) {
        acc += sigma * rng_gauss(seed, RngStream::increments, static_cast<std::uint32_t>(level), k);
        path.values[k + 1] = acc;
    }
    return path;
}

// Brownian-bridge midpoint insertion: the coarse grid is preserved
// bit-exactly, each midpoint is conditionally N(mean of neighbours,
// 2^{-(level+2)}). Noise is keyed by (seed, target level, midpoint index),
// so the draw order cannot matter.
inline SamplePath refine(const SamplePath& path, Seed seed,
                         int max_level = kDefaultMaxLevel) {
    const int target = path.level + 1;
    detail::check_level(target, max_level);
    const std::uint64_t n_coarse = path.last_index();
    const double sigma = std::sqrt(std::ldexp(1.0, -(path.level + 2)));
    SamplePath out;
    out.level = target;
    out.seed = seed;
    out.values.resize(2 * n_coarse + 1);
    for (std::uint64_t k = 0; k < n_coarse; ++k) {
        out.values[2 * k] = path.values[k];
        out.values[2 * k + 1] =
            0.5 * (path.values[k] + path.values[k + 1]) +
            sigma * rng_gauss(seed, RngStream::bridge, static_cast<std::uint32_t>(target), k);
    }
    out.values[2 * n_coarse] = path.values[n_coarse];
    return out;
}

// B-hat_u := B_1 - B_{1-u} on the same grid.
inline ReversedPath reverse(const SamplePath& path) {
    const std::uint64_t last = path.last_index();
    ReversedPath out;
    out.level = path.level;
    out.values.resize(last + 1);
    const double end = path.values[last];
    for (std::uint64_t k = 0; k <= last; ++k) {
        out.values[k] = end - path.values[last - k];
    }
    return out;
}

// f(t) - f(s) on the grid.
inline double increment(const SamplePath& path, std::uint64_t a_index,
                        std::uint64_t b_index) {
    if (a_index > b_index || b_index > path.last_index()) {
        throw bounds_error("increment: indices must satisfy 0 <= a <= b <= 2^{n+1}");
    }
    return path.values[b_index] - path.values[a_index];
}

// CSV dump, header `k,x,f`, full double precision.
inline void write_csv(const SamplePath& path, std::ostream& out) {
    out << "k,x,f\n";
    for (std::uint64_t k = 0; k < path.size(); ++k) {
        out << k << ',' << format_g17(path.x_of(k)) << ','
            << format_g17(path.values[k]) << '\n';
    }
}

// Deterministic control path f(x) = x + 1 (grid values k/2^n); every
// module has a closed form on it.
inline SamplePath ramp_path(int level, int max_level = kDefaultMaxLevel) {
    detail::check_level(level, max_level);
    const std::uint64_t n_inc = std::uint64_t{1} << (level + 1);
    SamplePath path;
    path.level = level;
    path.values.resize(n_inc + 1);
    for (std::uint64_t k = 0; k <= n_inc; ++k) {
        path.values[k] = std::ldexp(static_cast<double>(k), -level);
    }
    return path;
}

}  // namespace framepath
