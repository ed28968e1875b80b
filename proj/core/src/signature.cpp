#include "sigtail/signature.hpp"

#include <cmath>
#include <stdexcept>

#include "sigtail/numerics.hpp"
#include "sigtail/shuffle.hpp"

namespace sigtail {

const std::vector<double>& SignatureRecord::log_norms(const NormSpec& spec) const {
    const auto key = std::make_pair(spec.kind, spec.kind == NormKind::SampledDualLower ? spec.samples : 0);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    std::vector<double> logs(static_cast<std::size_t>(series_.trunc()) + 1);
    for (int n = 0; n <= series_.trunc(); ++n)
        logs[static_cast<std::size_t>(n)] = log_level_norm(series_.level(n), series_.dim(), n, spec);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return cache_.emplace(key, std::move(logs)).first->second;
}

TruncatedTensorSeries signature_series(const PiecewiseLinearPath& path, int trunc) {
    path.validate();
    auto sig = TruncatedTensorSeries::unit(path.d, trunc);
    std::vector<double> delta(static_cast<std::size_t>(path.d));
    for (std::size_t i = 1; i < path.times.size(); ++i) {
        for (int j = 0; j < path.d; ++j)
            delta[static_cast<std::size_t>(j)] =
                path.points[i][static_cast<std::size_t>(j)] - path.points[i - 1][static_cast<std::size_t>(j)];
        concat_segment_exp(sig, delta);
    }
    return sig;
}

SignatureRecord signature(const PiecewiseLinearPath& path, double s, double t, int trunc) {
    if (!(s < t)) throw std::invalid_argument("signature: need s < t");
    if (s < path.t_begin() - 1e-15 || t > path.t_end() + 1e-15)
        throw std::out_of_range("signature: interval outside path domain");
    PiecewiseLinearPath clip = path.clipped(s, t);
    return SignatureRecord(s, t, signature_series(clip, trunc));
}

SignatureRecord signature(const PiecewiseLinearPath& path, int trunc) {
    return SignatureRecord(path.t_begin(), path.t_end(), signature_series(path, trunc));
}

SignatureRecord reverse_signature(const SignatureRecord& rec) {
    const auto& g = rec.series();
    TruncatedTensorSeries out(g.dim(), g.trunc());
    out.scalar() = g.scalar();
    for (int n = 1; n <= g.trunc(); ++n) {
        auto rev = apply_permutation(Permutation::reversal(n), g.level(n), g.dim());
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        auto dst = out.level(n);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = sign * rev[i];
    }
    return SignatureRecord(rec.s(), rec.t(), std::move(out));
}

std::vector<SignatureRecord> prefix_signatures(const PiecewiseLinearPath& path,
                                               std::span<const double> grid, int trunc) {
    path.validate();
    const int d = path.d;
    const double t0 = path.t_begin();
    std::vector<SignatureRecord> out;
    out.reserve(grid.size());

    auto sig = TruncatedTensorSeries::unit(d, trunc);
    std::vector<double> delta(static_cast<std::size_t>(d));
    std::vector<double> cursor = path.points.front();
    double cursor_t = t0;
    std::size_t chord = 1;

    auto advance_to = [&](double target) {
        while (cursor_t < target - 0.0) {
            double chord_end = path.times[chord];
            if (chord_end <= target) {
                for (int j = 0; j < d; ++j)
                    delta[static_cast<std::size_t>(j)] =
                        path.points[chord][static_cast<std::size_t>(j)] - cursor[static_cast<std::size_t>(j)];
                concat_segment_exp(sig, delta);
                cursor = path.points[chord];
                cursor_t = chord_end;
                ++chord;
            } else {
                auto p = path.at(target);
                for (int j = 0; j < d; ++j)
                    delta[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j)] - cursor[static_cast<std::size_t>(j)];
                concat_segment_exp(sig, delta);
                cursor = std::move(p);
                cursor_t = target;
            }
        }
    };

    double prev = t0;
    for (double g : grid) {
        if (!(g > prev) && !out.empty()) throw std::invalid_argument("prefix_signatures: grid must ascend");
        if (g < t0 - 1e-15 || g > path.t_end() + 1e-15)
            throw std::out_of_range("prefix_signatures: grid point outside domain");
        advance_to(std::min(g, path.t_end()));
        out.emplace_back(t0, g, sig);
        prev = g;
    }
    return out;
}

std::vector<double> normalized_level_sequence(const SignatureRecord& rec, double p,
                                              const NormSpec& spec) {
    if (p < 1.0) throw std::invalid_argument("normalized_level_sequence: p must be >= 1");
    const int N = rec.series().trunc();
    const auto& logs = rec.log_norms(spec);
    std::vector<double> a(static_cast<std::size_t>(N), 0.0);
    for (int n = 1; n <= N; ++n) {
        double ln = logs[static_cast<std::size_t>(n)];
        if (ln == kNegInf) {
            a[static_cast<std::size_t>(n - 1)] = 0.0;
            continue;
        }
        a[static_cast<std::size_t>(n - 1)] =
            std::exp((p / n) * (half_factorial_log(static_cast<double>(n), p) + ln));
    }
    return a;
}

}  // namespace sigtail
