#include "sigtail/path.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sigtail/rng.hpp"

namespace sigtail {

void PiecewiseLinearPath::validate() const {
    if (times.size() < 2) throw std::invalid_argument("path needs at least one chord");
    if (points.size() != times.size()) throw std::invalid_argument("times/points size mismatch");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw std::invalid_argument("times must be strictly increasing");
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != d) throw std::invalid_argument("point dimension mismatch");
        for (double x : p)
            if (!std::isfinite(x)) throw std::invalid_argument("non-finite point");
    }
}

std::vector<double> PiecewiseLinearPath::at(double t) const {
    if (t < times.front() || t > times.back()) throw std::out_of_range("time outside path domain");
    std::size_t hi = 1;
    while (hi < times.size() - 1 && times[hi] < t) ++hi;
    double t0 = times[hi - 1], t1 = times[hi];
    double w = (t - t0) / (t1 - t0);
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        p[static_cast<std::size_t>(j)] = (1.0 - w) * points[hi - 1][static_cast<std::size_t>(j)] +
                                         w * points[hi][static_cast<std::size_t>(j)];
    return p;
}

PiecewiseLinearPath PiecewiseLinearPath::clipped(double s, double t) const {
    if (!(s < t)) throw std::invalid_argument("clipped: need s < t");
    if (s < times.front() - 1e-15 || t > times.back() + 1e-15)
        throw std::out_of_range("clipped: interval outside path domain");
    s = std::max(s, times.front());
    t = std::min(t, times.back());
    PiecewiseLinearPath out;
    out.d = d;
    out.times.push_back(s);
    out.points.push_back(at(s));
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] > s && times[i] < t) {
            out.times.push_back(times[i]);
            out.points.push_back(points[i]);
        }
    }
    out.times.push_back(t);
    out.points.push_back(at(t));
    return out;
}

PiecewiseLinearPath PiecewiseLinearPath::dilated(double c) const {
    PiecewiseLinearPath out = *this;
    for (auto& p : out.points)
        for (double& x : p) x *= c;
    return out;
}

PiecewiseLinearPath PiecewiseLinearPath::time_changed(
    const std::vector<double>& new_times, const std::vector<double>& sigma_of_new_times) const {
    if (new_times.size() != sigma_of_new_times.size())
        throw std::invalid_argument("time_changed: grid size mismatch");
    PiecewiseLinearPath out;
    out.d = d;
    out.times = new_times;
    out.points.reserve(new_times.size());
    for (double s : sigma_of_new_times) out.points.push_back(at(s));
    out.validate();
    return out;
}

double PiecewiseLinearPath::length_l2() const {
    double total = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) {
            double dx = points[i][static_cast<std::size_t>(j)] - points[i - 1][static_cast<std::size_t>(j)];
            s += dx * dx;
        }
        total += std::sqrt(s);
    }
    return total;
}

double PiecewiseLinearPath::length_l1() const {
    double total = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i)
        for (int j = 0; j < d; ++j)
            total += std::fabs(points[i][static_cast<std::size_t>(j)] - points[i - 1][static_cast<std::size_t>(j)]);
    return total;
}

double PiecewiseLinearPath::max_chord_l2() const {
    double m = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) {
            double dx = points[i][static_cast<std::size_t>(j)] - points[i - 1][static_cast<std::size_t>(j)];
            s += dx * dx;
        }
        m = std::max(m, std::sqrt(s));
    }
    return m;
}

PiecewiseLinearPath line_path(std::span<const double> v, double t0, double t1) {
    PiecewiseLinearPath p;
    p.d = static_cast<int>(v.size());
    p.times = {t0, t1};
    p.points.resize(2, std::vector<double>(v.size(), 0.0));
    for (std::size_t j = 0; j < v.size(); ++j) p.points[1][j] = v[j];
    return p;
}

PiecewiseLinearPath staircase_path(std::span<const double> legs, int d) {
    PiecewiseLinearPath p;
    p.d = d;
    std::size_t m = legs.size();
    p.times.resize(m + 1);
    p.points.assign(m + 1, std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (std::size_t i = 0; i <= m; ++i) p.times[i] = static_cast<double>(i) / static_cast<double>(m);
    for (std::size_t i = 1; i <= m; ++i) {
        p.points[i] = p.points[i - 1];
        p.points[i][(i - 1) % static_cast<std::size_t>(d)] += legs[i - 1];
    }
    return p;
}

PiecewiseLinearPath random_path(int d, int chords, std::uint64_t seed) {
    PiecewiseLinearPath p;
    p.d = d;
    std::uint64_t state = derive(seed, {0x9a70ULL, static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(chords)});
    p.times.resize(static_cast<std::size_t>(chords) + 1);
    p.points.assign(static_cast<std::size_t>(chords) + 1, std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int i = 0; i <= chords; ++i)
        p.times[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(chords);
    for (int i = 1; i <= chords; ++i)
        for (int j = 0; j < d; ++j)
            p.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                uniform_unit(splitmix64_next(state)) - 0.5;
    return p;
}

}  // namespace sigtail
