#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace sigtail {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log Gamma(n/p + 1), the fractional factorial appearing in all
/// normalizations. Relative accuracy is that of std::lgamma (~1 ulp).
inline double half_factorial_log(double n, double p) {
    return std::lgamma(n / p + 1.0);
}

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double m = a > b ? a : b;
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

/// Pairwise (tree) summation over [lo, hi) of values produced by f(i).
/// The reduction tree depends only on the index range, never on thread
/// count, so results are bitwise reproducible.
template <class F>
double pairwise_sum_indexed(std::size_t lo, std::size_t hi, F&& f) {
    std::size_t n = hi - lo;
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        return s;
    }
    std::size_t mid = lo + n / 2;
    return pairwise_sum_indexed(lo, mid, f) + pairwise_sum_indexed(mid, hi, f);
}

inline double pairwise_sum(std::span<const double> v) {
    return pairwise_sum_indexed(0, v.size(), [&](std::size_t i) { return v[i]; });
}

struct MeanStderr {
    long count = 0;
    double mean = 0.0;
    double stderr_ = 0.0;  // sample std / sqrt(count); NaN when count < 2
};

/// Mean and standard error via pairwise sums of x and x^2.
inline MeanStderr mean_stderr(std::span<const double> xs) {
    MeanStderr r;
    r.count = static_cast<long>(xs.size());
    if (r.count == 0) return r;
    double s = pairwise_sum(xs);
    double s2 = pairwise_sum_indexed(0, xs.size(), [&](std::size_t i) { return xs[i] * xs[i]; });
    r.mean = s / static_cast<double>(r.count);
    if (r.count < 2) {
        r.stderr_ = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    double var = (s2 - static_cast<double>(r.count) * r.mean * r.mean) / static_cast<double>(r.count - 1);
    if (var < 0) var = 0;
    r.stderr_ = std::sqrt(var / static_cast<double>(r.count));
    return r;
}

/// Median and quartiles with linear interpolation (type-7).
struct Quartiles {
    double q1 = 0, median = 0, q3 = 0;
};

inline Quartiles quartiles(std::vector<double> xs) {
    Quartiles q;
    if (xs.empty()) return q;
    std::sort(xs.begin(), xs.end());
    auto at = [&](double p) {
        double h = p * static_cast<double>(xs.size() - 1);
        std::size_t lo = static_cast<std::size_t>(h);
        std::size_t hi = lo + 1 < xs.size() ? lo + 1 : lo;
        double frac = h - static_cast<double>(lo);
        return xs[lo] + frac * (xs[hi] - xs[lo]);
    };
    q.q1 = at(0.25);
    q.median = at(0.5);
    q.q3 = at(0.75);
    return q;
}

}  // namespace sigtail
