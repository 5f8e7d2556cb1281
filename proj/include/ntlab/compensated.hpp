#pragma once

#include <cmath>
#include <span>

namespace ntlab {

// Neumaier's variant of Kahan summation. Handles terms larger than the
// running sum, which happens in the alternating sums over mu.
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;
    constexpr explicit CompensatedSum(double initial) : sum_(initial) {}

    void add(double v) noexcept
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double v) noexcept
    {
        add(v);
        return *this;
    }

    [[nodiscard]] constexpr double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> values) noexcept
{
    CompensatedSum acc;
    for (double v : values)
        acc.add(v);
    return acc.value();
}

} // namespace ntlab
