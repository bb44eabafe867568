#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "framepath/dyadic.hpp"
#include "framepath/errors.hpp"
#include "framepath/io.hpp"
#include "framepath/sampler.hpp"

namespace framepath {

// Grid values of T_h^f = (f_{h-1+u})_{0<=u<=1}: an exact contiguous
// window of the source path, copied out so the value is self-contained.
struct FrameEvaluation {
    int source_level = 0;
    DyadicTime h;
    std::vector<double> values;  // entry j holds f(h - 1 + j/2^n)

    std::size_t size() const { return values.size(); }
};

// Dyadic polygonal approximation of the path-valued path h -> T_h at
// approximation level m: knots at h = k/2^m.
struct FramePolygonal {
    int approx_level = 0;
    int source_level = 0;
    std::vector<FrameEvaluation> knots;
};

// T_h evaluated on the grid. h must be no finer than the path grid; the
// window is read off directly, nothing is interpolated.
inline FrameEvaluation frame_eval(const SamplePath& path, const DyadicTime& h) {
    if (!h.aligned_to_level(path.level)) {
        throw alignment_error("frame_eval: h is finer than the path grid");
    }
    const std::uint64_t n = std::uint64_t{1} << path.level;
    const std::uint64_t offset = h.numerator_at_level(path.level);
    FrameEvaluation fe;
    fe.source_level = path.level;
    fe.h = h;
    fe.values.assign(path.values.begin() + static_cast<std::ptrdiff_t>(offset),
                     path.values.begin() + static_cast<std::ptrdiff_t>(offset + n + 1));
    return fe;
}

// sup_j |a_j - b_j|.
inline double sup_distance(const FrameEvaluation& a, const FrameEvaluation& b) {
    if (a.source_level != b.source_level || a.values.size() != b.values.size()) {
        throw shape_error("sup_distance: evaluations live on different grids");
    }
    double best = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        best = std::max(best, std::abs(a.values[j] - b.values[j]));
    }
    return best;
}

// Grid values of T_{h2} - T_{h1}; the sequence every p-variation check in
// the tail and variation modules runs on.
inline std::vector<double> frame_diff(const SamplePath& path, const DyadicTime& h1,
                                      const DyadicTime& h2) {
    const FrameEvaluation a = frame_eval(path, h1);
    const FrameEvaluation b = frame_eval(path, h2);
    std::vector<double> out(a.values.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = b.values[j] - a.values[j];
    }
    return out;
}

inline FramePolygonal polygonal(const SamplePath& path, int m) {
    if (m < 0 || m > path.level) {
        throw domain_error("polygonal: approximation level must satisfy 0 <= m <= path level");
    }
    FramePolygonal fp;
    fp.approx_level = m;
    fp.source_level = path.level;
    const std::uint64_t knots = (std::uint64_t{1} << m) + 1;
    fp.knots.reserve(knots);
    for (std::uint64_t k = 0; k < knots; ++k) {
        fp.knots.push_back(frame_eval(path, DyadicTime(k, m)));
    }
    return fp;
}

// X(m)_t = X_{(k-1)/2^m} + 2^m (t - (k-1)/2^m) Delta_k^m X, entrywise.
inline std::vector<double> eval_polygonal(const FramePolygonal& fp, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw domain_error("eval_polygonal: t must lie in [0, 1]");
    }
    const double scaled = std::ldexp(t, fp.approx_level);
    const std::uint64_t k = static_cast<std::uint64_t>(std::floor(scaled));
    if (static_cast<double>(k) == scaled) {
        return fp.knots[k].values;  // knot times reproduce the evaluation exactly
    }
    const double w = scaled - static_cast<double>(k);
    const std::vector<double>& lo = fp.knots[k].values;
    const std::vector<double>& hi = fp.knots[k + 1].values;
    std::vector<double> out(lo.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = lo[j] + w * (hi[j] - lo[j]);
    }
    return out;
}

// CSV dump, header `j,u,value` with u = j/2^n.
inline void write_csv(const FrameEvaluation& fe, std::ostream& out) {
    out << "j,u,value\n";
    for (std::size_t j = 0; j < fe.values.size(); ++j) {
        const double u = std::ldexp(static_cast<double>(j), -fe.source_level);
        out << j << ',' << format_g17(u) << ',' << format_g17(fe.values[j]) << '\n';
    }
}

}  // namespace framepath
