// fwht.hpp
// In-place Walsh-Hadamard butterflies and the summation helpers used by the
// transform path of the magic measures.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gkpmagic {

// Unnormalized transform: data[i] <- sum_k (-1)^{popcount(i & k)} data[k].
// Length must be a power of two.
template <typename T>
void fwht_inplace(std::span<T> data) {
    const std::size_t len = data.size();
    for (std::size_t half = 1; half < len; half <<= 1) {
        for (std::size_t block = 0; block < len; block += 2 * half) {
            T* lo = data.data() + block;
            T* hi = lo + half;
            for (std::size_t k = 0; k < half; ++k) {
                const T a = lo[k];
                const T b = hi[k];
                lo[k] = a + b;
                hi[k] = a - b;
            }
        }
    }
}

// Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Fixed-shape pairwise reduction: the tree depends only on values.size(),
// so the result does not depend on how the values were produced.
inline double pairwise_sum(std::span<const double> values) {
    if (values.empty()) return 0.0;
    if (values.size() == 1) return values[0];
    const std::size_t mid = values.size() / 2;
    return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

} // namespace gkpmagic
