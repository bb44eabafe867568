#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace framepath {

// Kahan-Neumaier compensated accumulator. The double sums in the area
// module cancel heavily (2^{2n} signed products), so plain accumulation
// loses digits there.
class KahanSum {
public:
    KahanSum() = default;
    explicit KahanSum(double init) : sum_(init) {}

    KahanSum& add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    KahanSum& operator+=(double x) { return add(x); }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
    KahanSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

}  // namespace framepath
