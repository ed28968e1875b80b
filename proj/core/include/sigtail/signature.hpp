#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "sigtail/norms.hpp"
#include "sigtail/path.hpp"
#include "sigtail/tensor_series.hpp"

namespace sigtail {

/// Signature of a path over an interval, with a lazily filled cache of
/// per-level log norms.
class SignatureRecord {
public:
    SignatureRecord() = default;
    SignatureRecord(double s, double t, TruncatedTensorSeries series)
        : s_(s), t_(t), series_(std::move(series)) {}

    SignatureRecord(const SignatureRecord& o) : s_(o.s_), t_(o.t_), series_(o.series_) {
        std::lock_guard<std::mutex> lock(o.cache_mutex_);
        cache_ = o.cache_;
    }
    SignatureRecord(SignatureRecord&& o) noexcept : s_(o.s_), t_(o.t_), series_(std::move(o.series_)) {
        std::lock_guard<std::mutex> lock(o.cache_mutex_);
        cache_ = std::move(o.cache_);
    }
    SignatureRecord& operator=(SignatureRecord o) {
        s_ = o.s_;
        t_ = o.t_;
        series_ = std::move(o.series_);
        cache_ = std::move(o.cache_);
        return *this;
    }

    double s() const { return s_; }
    double t() const { return t_; }
    const TruncatedTensorSeries& series() const { return series_; }

    /// log ||g_n|| for n = 0..N under the given norm; cached per kind.
    const std::vector<double>& log_norms(const NormSpec& spec = {}) const;

private:
    double s_ = 0.0, t_ = 1.0;
    TruncatedTensorSeries series_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<NormKind, int>, std::vector<double>> cache_;
};

/// Exact truncated signature of the linear interpolation over [s, t]:
/// the product of chord exponentials, boundary chords split exactly.
SignatureRecord signature(const PiecewiseLinearPath& path, double s, double t, int trunc);

/// Signature over the full domain of the path.
SignatureRecord signature(const PiecewiseLinearPath& path, int trunc);

/// Signature series only (no record wrapper).
TruncatedTensorSeries signature_series(const PiecewiseLinearPath& path, int trunc);

/// Signature of the reversed path: level n picks up the full reversal
/// permutation and the sign (-1)^n, so rec (x) reverse(rec) is the unit.
SignatureRecord reverse_signature(const SignatureRecord& rec);

/// Signatures over [t0, g] for every g in the ascending grid, in one
/// pass over the chords (boundary chords split exactly).
std::vector<SignatureRecord> prefix_signatures(const PiecewiseLinearPath& path,
                                               std::span<const double> grid, int trunc);

/// Normalized level sequence a_n = ((n/p)! ||g_n||)^(p/n) for n = 1..N,
/// computed in the log domain. Zero levels give a_n = 0.
std::vector<double> normalized_level_sequence(const SignatureRecord& rec, double p,
                                              const NormSpec& spec = {});

}  // namespace sigtail
