#include "sigtail/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sigtail/numerics.hpp"
#include "sigtail/rng.hpp"
#include "sigtail/tensor_series.hpp"

namespace sigtail {

const char* norm_kind_name(NormKind k) {
    switch (k) {
        case NormKind::L1Proj: return "l1-proj";
        case NormKind::L2Coord: return "l2-coord";
        case NormKind::L1CoordsUpper: return "l1-coords-upper";
        case NormKind::SampledDualLower: return "sampled-dual-lower";
    }
    return "?";
}

NormKind norm_kind_from_name(const std::string& name) {
    if (name == "l1-proj") return NormKind::L1Proj;
    if (name == "l2-coord") return NormKind::L2Coord;
    if (name == "l1-coords-upper") return NormKind::L1CoordsUpper;
    if (name == "sampled-dual-lower") return NormKind::SampledDualLower;
    throw std::invalid_argument("unknown norm kind: " + name);
}

namespace {

double l1_norm(std::span<const double> level) {
    return pairwise_sum_indexed(0, level.size(), [&](std::size_t i) { return std::fabs(level[i]); });
}

double l2_norm(std::span<const double> level) {
    return std::sqrt(pairwise_sum_indexed(0, level.size(), [&](std::size_t i) { return level[i] * level[i]; }));
}

/// max over sampled rank-one functionals Phi(v1,...,vn) = prod <u_j, v_j>
/// with l2 unit vectors u_j, evaluated by contracting one mode at a time.
double sampled_dual_lower(std::span<const double> level, int d, int n, const NormSpec& spec) {
    if (n == 0) return std::fabs(level[0]);
    std::vector<double> u(static_cast<std::size_t>(d));
    std::vector<double> cur(level.begin(), level.end()), next;
    double best = 0.0;
    for (int s = 0; s < spec.samples; ++s) {
        GaussianStream gs(derive(spec.seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)}));
        cur.assign(level.begin(), level.end());
        std::size_t rest = level.size() / static_cast<std::size_t>(d);
        for (int j = 0; j < n; ++j) {
            double norm2 = 0.0;
            for (int i = 0; i < d; ++i) {
                u[static_cast<std::size_t>(i)] = gs.next();
                norm2 += u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
            }
            double inv = 1.0 / std::sqrt(norm2);
            next.assign(rest, 0.0);
            // contract the leading mode: cur has shape d x rest
            for (int i = 0; i < d; ++i) {
                double c = u[static_cast<std::size_t>(i)] * inv;
                const double* src = cur.data() + static_cast<std::size_t>(i) * rest;
                for (std::size_t r = 0; r < rest; ++r) next[r] += c * src[r];
            }
            cur.swap(next);
            rest /= static_cast<std::size_t>(d);
        }
        best = std::max(best, std::fabs(cur[0]));
    }
    return best;
}

}  // namespace

double level_norm(std::span<const double> level, int d, int n, const NormSpec& spec) {
    if (level.size() != pow_size(d, n))
        throw std::invalid_argument("level_norm: array size does not match d^n");
    switch (spec.kind) {
        case NormKind::L1Proj:
        case NormKind::L1CoordsUpper:
            return l1_norm(level);
        case NormKind::L2Coord:
            return l2_norm(level);
        case NormKind::SampledDualLower:
            return sampled_dual_lower(level, d, n, spec);
    }
    throw std::logic_error("level_norm: unreachable");
}

double log_level_norm(std::span<const double> level, int d, int n, const NormSpec& spec) {
    double v = level_norm(level, d, n, spec);
    return v == 0.0 ? kNegInf : std::log(v);
}

}  // namespace sigtail
