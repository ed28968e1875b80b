#pragma once

#include <span>
#include <string>
#include <vector>

namespace sigtail {

/// Ordered time/point samples in R^d; the path is the linear
/// interpolation between consecutive samples.
struct PiecewiseLinearPath {
    int d = 0;
    std::vector<double> times;                // strictly increasing, size m+1
    std::vector<std::vector<double>> points;  // size m+1, each of size d

    int chord_count() const { return static_cast<int>(times.size()) - 1; }
    double t_begin() const { return times.front(); }
    double t_end() const { return times.back(); }

    void validate() const;

    /// Point at time t by linear interpolation; t must lie in the domain.
    std::vector<double> at(double t) const;

    /// Restriction to [s, t], splitting boundary chords exactly.
    PiecewiseLinearPath clipped(double s, double t) const;

    /// Path scaled by c in space.
    PiecewiseLinearPath dilated(double c) const;

    /// Reparametrized path u -> gamma(sigma(u)) sampled so every original
    /// vertex is hit: new times are sigma^{-1}(old times) plus the given
    /// extra grid points. sigma must be increasing with matching range.
    PiecewiseLinearPath time_changed(const std::vector<double>& new_times,
                                     const std::vector<double>& sigma_of_new_times) const;

    double length_l2() const;
    double length_l1() const;
    double max_chord_l2() const;
};

PiecewiseLinearPath line_path(std::span<const double> v, double t0 = 0.0, double t1 = 1.0);

/// Axis staircase through the given increments, unit time per chord,
/// rescaled to [0, 1].
PiecewiseLinearPath staircase_path(std::span<const double> legs, int d);

/// Uniform random walk path with m chords on [0,1]; coordinates of each
/// vertex are iid uniform in [-0.5, 0.5]. Used by tests as a generic
/// "random piecewise-linear path".
PiecewiseLinearPath random_path(int d, int chords, std::uint64_t seed);

}  // namespace sigtail
