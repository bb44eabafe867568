#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "framepath/errors.hpp"

namespace framepath {

// 64-bit seed for all randomized operations. Equal seeds reproduce
// bit-identical output at equal parameters.
struct Seed {
    std::uint64_t value = 0;
};

namespace detail {

// Philox4x32-10 (Salmon et al., SC 2011). Counter-based: each draw is a
// pure function of (key, counter), so generation order and thread layout
// cannot change the stream.
inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, key);
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

}  // namespace detail

// Draw streams, used as a domain-separation tag so that e.g. direct
// increment noise and bridge midpoint noise never collide on a key.
enum class RngStream : std::uint32_t {
    increments = 0,
    bridge = 1,
    noise = 2,
    trial = 3,
};

// One 64-bit word, keyed by (seed, stream, level, index).
inline std::uint64_t rng_word(Seed seed, RngStream stream, std::uint32_t level,
                              std::uint64_t index) {
    const std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(seed.value),
        static_cast<std::uint32_t>(seed.value >> 32)};
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>(index >> 32),
        level,
        static_cast<std::uint32_t>(stream)};
    const auto out = detail::philox4x32(ctr, key);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// Uniform in the open interval (0, 1).
inline double rng_uniform(Seed seed, RngStream stream, std::uint32_t level,
                          std::uint64_t index) {
    const std::uint64_t bits = rng_word(seed, stream, level, index);
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Inverse of the standard normal CDF; Wichura's AS 241 (PPND16) rational
// approximation, absolute error well below 1e-9 across (0, 1).
inline double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw domain_error("inverse_normal_cdf: p must lie in (0, 1)");
    }
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        z = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-6) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        z = num / den;
    }
    return (q < 0.0) ? -z : z;
}

// Standard normal draw keyed by (seed, stream, level, index).
inline double rng_gauss(Seed seed, RngStream stream, std::uint32_t level,
                        std::uint64_t index) {
    return inverse_normal_cdf(rng_uniform(seed, stream, level, index));
}

// Derives an independent 64-bit seed for trial number `index`.
inline Seed trial_seed(Seed seed, std::uint64_t index) {
    return Seed{rng_word(seed, RngStream::trial, 0, index)};
}

}  // namespace framepath
