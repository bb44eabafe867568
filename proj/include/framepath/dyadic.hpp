#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "framepath/errors.hpp"

namespace framepath {

// Exact dyadic rational k / 2^m in [0, 1]. Frame evaluation times, area
// corners and window offsets are all dyadic-exact; they are never carried
// through floating point.
struct DyadicTime {
    std::uint64_t num = 0;  // k
    int level = 0;          // m

    DyadicTime() = default;
    DyadicTime(std::uint64_t k, int m) : num(k), level(m) {
        if (m < 0 || m > 62) throw domain_error("DyadicTime: level out of range");
        if (k > (std::uint64_t{1} << m)) {
            throw domain_error("DyadicTime: k/2^m exceeds 1");
        }
    }

    double value() const { return std::ldexp(static_cast<double>(num), -level); }

    bool is_zero() const { return num == 0; }

    // Same rational with the smallest level (k odd, or zero at level 0).
    DyadicTime normalized() const {
        std::uint64_t k = num;
        int m = level;
        if (k == 0) return DyadicTime(0, 0);
        while (m > 0 && (k & 1u) == 0) {
            k >>= 1;
            --m;
        }
        return DyadicTime(k, m);
    }

    // Numerator when rewritten at a (finer or equal) target level.
    std::uint64_t numerator_at_level(int target) const {
        const DyadicTime n = normalized();
        if (n.level > target) {
            throw alignment_error("DyadicTime: value is finer than the target grid");
        }
        return n.num << (target - n.level);
    }

    bool aligned_to_level(int target) const {
        return normalized().level <= target;
    }

    friend bool operator==(const DyadicTime& a, const DyadicTime& b) {
        const DyadicTime x = a.normalized(), y = b.normalized();
        return x.num == y.num && x.level == y.level;
    }
    friend bool operator<(const DyadicTime& a, const DyadicTime& b) {
        // Compare k_a * 2^{m_b} vs k_b * 2^{m_a} without overflow by
        // rescaling to the common level (levels are <= 62, numerators fit).
        const int m = std::max(a.level, b.level);
        return (a.num << (m - a.level)) < (b.num << (m - b.level));
    }
    friend bool operator<=(const DyadicTime& a, const DyadicTime& b) {
        return a < b || a == b;
    }
};

// Exact dyadic difference b - a (requires a <= b).
inline DyadicTime dyadic_sub(const DyadicTime& a, const DyadicTime& b) {
    if (!(a <= b)) throw domain_error("dyadic_sub: requires a <= b");
    const int m = std::max(a.level, b.level);
    const std::uint64_t ka = a.num << (m - a.level);
    const std::uint64_t kb = b.num << (m - b.level);
    return DyadicTime(kb - ka, m).normalized();
}

// n(h): the unique integer with 2^{-n(h)} <= h < 2^{-n(h)+1}, for 0 < h <= 1.
inline int n_of_h(const DyadicTime& h) {
    const DyadicTime r = h.normalized();
    if (r.num == 0) throw domain_error("n_of_h: h must be positive");
    // h = k/2^m with k odd: floor(log2 k) = bit_width(k) - 1.
    return r.level - (std::bit_width(r.num) - 1);
}

inline int n_of_h(double h) {
    if (!(h > 0.0 && h <= 1.0)) {
        throw domain_error("n_of_h: h must lie in (0, 1]");
    }
    int n = static_cast<int>(std::ceil(-std::log2(h)));
    // Fix up boundary rounding by direct bracketing.
    while (std::ldexp(1.0, -n) > h) ++n;
    while (n > 0 && std::ldexp(1.0, -(n - 1)) <= h) --n;
    return n;
}

// Parses "k/d" with d a power of two, a plain integer, or a decimal that
// is exactly dyadic (e.g. "0.25"); everything else is rejected.
inline DyadicTime parse_dyadic(std::string_view text) {
    const std::string s(text);
    const auto fail = [&]() -> DyadicTime {
        throw domain_error("not an exact dyadic rational in [0, 1]: '" + s + "'");
    };
    auto parse_u64 = [&](std::string_view v) -> std::uint64_t {
        if (v.empty() || v.size() > 18) fail();
        std::uint64_t out = 0;
        for (char c : v) {
            if (c < '0' || c > '9') fail();
            out = out * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return out;
    };

    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        const std::uint64_t k = parse_u64(text.substr(0, slash));
        const std::uint64_t d = parse_u64(text.substr(slash + 1));
        if (d == 0 || !std::has_single_bit(d)) fail();
        const int m = std::bit_width(d) - 1;
        if (k > d) fail();
        return DyadicTime(k, m).normalized();
    }

    const auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        const std::uint64_t k = parse_u64(text);
        if (k > 1) fail();
        return DyadicTime(k, 0);
    }

    // Decimal: digits/10^d is dyadic iff the reduced denominator is a
    // power of two (every factor 5 must cancel against the numerator).
    const std::uint64_t whole = dot == 0 ? 0 : parse_u64(text.substr(0, dot));
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty()) fail();
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::uint64_t num = whole * den + parse_u64(frac);
    if (num == 0) return DyadicTime(0, 0);
    while (num % 2 == 0 && den % 2 == 0) { num /= 2; den /= 2; }
    while (num % 5 == 0 && den % 5 == 0) { num /= 5; den /= 5; }
    if (!std::has_single_bit(den)) fail();
    const int m = std::bit_width(den) - 1;
    if (num > den) fail();
    return DyadicTime(num, m).normalized();
}

}  // namespace framepath
