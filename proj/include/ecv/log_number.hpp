#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace ecv {

// Nonnegative real stored on log scale. Exact zero is represented by
// -infinity, which log-sum-exp and multiplication handle naturally.
// All multiplicities and partition sums use this type: the counts involved
// overflow any fixed-width integer long before N reaches 100.
class log_number {
public:
    constexpr log_number() : lg_(-std::numeric_limits<double>::infinity()) {}

    static constexpr log_number zero() { return log_number{}; }
    static constexpr log_number one() { return from_log(0.0); }
    static constexpr log_number from_log(double lg) {
        log_number x;
        x.lg_ = lg;
        return x;
    }
    static log_number from_value(double v) {
        return from_log(v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity());
    }

    double log() const { return lg_; }
    double value() const { return std::exp(lg_); }  // may overflow to inf
    bool is_zero() const { return lg_ == -std::numeric_limits<double>::infinity(); }

    log_number& operator+=(log_number o) {
        if (is_zero()) {
            lg_ = o.lg_;
        } else if (!o.is_zero()) {
            const double hi = lg_ > o.lg_ ? lg_ : o.lg_;
            const double lo = lg_ > o.lg_ ? o.lg_ : lg_;
            lg_ = hi + std::log1p(std::exp(lo - hi));
        }
        return *this;
    }
    log_number& operator*=(log_number o) {
        if (is_zero() || o.is_zero())
            lg_ = -std::numeric_limits<double>::infinity();
        else
            lg_ += o.lg_;
        return *this;
    }

    friend log_number operator+(log_number a, log_number b) { return a += b; }
    friend log_number operator*(log_number a, log_number b) { return a *= b; }
    friend bool operator==(log_number a, log_number b) { return a.lg_ == b.lg_; }
    friend bool operator<(log_number a, log_number b) { return a.lg_ < b.lg_; }

private:
    double lg_;
};

// Two-pass log-sum-exp over raw log values (-inf entries are exact zeros).
// Summation order is fixed by the span order, so reductions that fill a
// buffer per index and then call this are bit-stable across thread counts.
inline double log_sum_exp(std::span<const double> logs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : logs)
        if (x > mx) mx = x;
    if (mx == -std::numeric_limits<double>::infinity()) return mx;
    double acc = 0.0;
    for (double x : logs)
        if (x != -std::numeric_limits<double>::infinity()) acc += std::exp(x - mx);
    return mx + std::log(acc);
}

}  // namespace ecv
