#include "sigtail/rng.hpp"

#include <cmath>

namespace sigtail {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double gaussian_from_key(std::uint64_t key) {
    std::uint64_t s = mix64(key);
    double u1 = uniform_unit(splitmix64_next(s));
    double u2 = uniform_unit(splitmix64_next(s));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double GaussianStream::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = uniform_unit(splitmix64_next(state_));
    double u2 = uniform_unit(splitmix64_next(state_));
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(kTwoPi * u2);
    has_cached_ = true;
    return r * std::cos(kTwoPi * u2);
}

}  // namespace sigtail
