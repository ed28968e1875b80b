#include "sigtail/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigtail/numerics.hpp"
#include "sigtail/parallel.hpp"
#include "sigtail/rng.hpp"

namespace sigtail {

namespace {
constexpr std::uint64_t kBrownianTag = 0xb90b71a5ULL;
constexpr double kPi = 3.14159265358979323846;
}

BrownianSample sample_brownian(int d, double horizon, int depth, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("sample_brownian: d >= 1");
    if (depth < 0 || depth > 24) throw std::invalid_argument("sample_brownian: depth in 0..24");
    if (!(horizon > 0)) throw std::invalid_argument("sample_brownian: horizon > 0");

    const std::size_t m = std::size_t{1} << depth;
    BrownianSample s;
    s.d = d;
    s.horizon = horizon;
    s.depth = depth;
    s.seed = seed;
    s.path.d = d;
    s.path.times.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i)
        s.path.times[i] = horizon * static_cast<double>(i) / static_cast<double>(m);
    s.path.points.assign(m + 1, std::vector<double>(static_cast<std::size_t>(d), 0.0));

    for (int c = 0; c < d; ++c) {
        auto key = [&](std::uint64_t level, std::uint64_t node) {
            return derive(seed, {kBrownianTag, static_cast<std::uint64_t>(c), level, node});
        };
        // endpoint, then bridge midpoints level by level
        s.path.points[m][static_cast<std::size_t>(c)] = std::sqrt(horizon) * gaussian_from_key(key(0, 0));
        for (int level = 1; level <= depth; ++level) {
            std::size_t step = m >> level;  // half-width of the interval being split
            double sd = std::sqrt(horizon / std::pow(2.0, level + 1));
            std::size_t count = std::size_t{1} << (level - 1);
            for (std::size_t node = 0; node < count; ++node) {
                std::size_t left = node * (2 * step);
                std::size_t mid = left + step;
                std::size_t right = left + 2 * step;
                double avg = 0.5 * (s.path.points[left][static_cast<std::size_t>(c)] +
                                    s.path.points[right][static_cast<std::size_t>(c)]);
                s.path.points[mid][static_cast<std::size_t>(c)] =
                    avg + sd * gaussian_from_key(key(static_cast<std::uint64_t>(level), node));
            }
        }
    }
    return s;
}

TruncatedTensorSeries expected_signature(int d, double t, int trunc) {
    TruncatedTensorSeries es(d, trunc);
    es.scalar() = 1.0;
    for (int n = 1; 2 * n <= trunc; ++n) {
        double value = std::exp(n * std::log(t) - half_factorial_log(n, 1.0) - n * std::log(2.0));
        auto lv = es.level(2 * n);
        // nonzero only on words with equal adjacent pairs (w1=w2, w3=w4, ...)
        std::vector<int> pair(static_cast<std::size_t>(n), 0);
        for (;;) {
            std::size_t idx = 0;
            for (int j = 0; j < n; ++j) {
                std::size_t letter = static_cast<std::size_t>(pair[static_cast<std::size_t>(j)]);
                idx = (idx * static_cast<std::size_t>(d) + letter) * static_cast<std::size_t>(d) + letter;
            }
            lv[idx] = value;
            int j = n - 1;
            while (j >= 0 && pair[static_cast<std::size_t>(j)] == d - 1) --j;
            if (j < 0) break;
            ++pair[static_cast<std::size_t>(j)];
            for (int i = j + 1; i < n; ++i) pair[static_cast<std::size_t>(i)] = 0;
        }
    }
    return es;
}

namespace {

TruncatedTensorSeries chord_signature_of_trial(int d, double t, int trunc, int depth,
                                               std::uint64_t seed, long trial) {
    BrownianSample s = sample_brownian(d, t, depth, derive(seed, {static_cast<std::uint64_t>(trial)}));
    TruncatedTensorSeries sig = TruncatedTensorSeries::unit(d, trunc);
    std::vector<double> delta(static_cast<std::size_t>(d));
    const auto& pts = s.path.points;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        for (int j = 0; j < d; ++j)
            delta[static_cast<std::size_t>(j)] =
                pts[i][static_cast<std::size_t>(j)] - pts[i - 1][static_cast<std::size_t>(j)];
        concat_segment_exp(sig, delta);
    }
    return sig;
}

struct VecMoments {
    std::vector<double> sum, sumsq;
    long count = 0;
};

}  // namespace

McSignatureEstimate mc_expected_signature(int d, double t, int trunc, long trials, int depth,
                                          std::uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("mc_expected_signature: trials >= 1");
    std::size_t total = 0;
    for (int n = 0; n <= trunc; ++n) total += pow_size(d, n);

    auto acc_fn = [&](VecMoments& acc, std::size_t trial) {
        if (acc.sum.empty()) {
            acc.sum.assign(total, 0.0);
            acc.sumsq.assign(total, 0.0);
        }
        TruncatedTensorSeries sig =
            chord_signature_of_trial(d, t, trunc, depth, seed, static_cast<long>(trial));
        std::size_t off = 0;
        for (int n = 0; n <= trunc; ++n) {
            auto lv = sig.level(n);
            for (std::size_t i = 0; i < lv.size(); ++i) {
                acc.sum[off + i] += lv[i];
                acc.sumsq[off + i] += lv[i] * lv[i];
            }
            off += lv.size();
        }
        acc.count += 1;
    };
    auto combine = [&](VecMoments& into, const VecMoments& from) {
        if (from.count == 0) return;
        if (into.sum.empty()) {
            into = from;
            return;
        }
        for (std::size_t i = 0; i < into.sum.size(); ++i) {
            into.sum[i] += from.sum[i];
            into.sumsq[i] += from.sumsq[i];
        }
        into.count += from.count;
    };
    VecMoments m = parallel_reduce<VecMoments>(static_cast<std::size_t>(trials), acc_fn, combine, threads);

    McSignatureEstimate est{TruncatedTensorSeries(d, trunc), TruncatedTensorSeries(d, trunc), trials,
                            trials >= 2};
    std::size_t off = 0;
    for (int n = 0; n <= trunc; ++n) {
        auto mean = est.mean.level(n);
        auto se = est.stderr_.level(n);
        for (std::size_t i = 0; i < mean.size(); ++i) {
            double mu = m.sum[off + i] / static_cast<double>(trials);
            mean[i] = mu;
            if (trials >= 2) {
                double var = (m.sumsq[off + i] - trials * mu * mu) / static_cast<double>(trials - 1);
                se[i] = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
            }
        }
        off += mean.size();
    }
    return est;
}

WordPathStats word_coefficient_stats(const PiecewiseLinearPath& path, std::span<const int> word) {
    const int n = static_cast<int>(word.size());
    const int d = path.d;
    for (int letter : word)
        if (letter < 1 || letter > d) throw std::invalid_argument("word letter outside 1..d");

    // prefix iterated integrals I_0..I_n; over one chord with increment
    // delta, I_j <- sum_r I_r * prod_{m=r+1..j} delta_{w_m} / (j-r)!
    std::vector<double> I(static_cast<std::size_t>(n) + 1, 0.0);
    I[0] = 1.0;
    std::vector<double> inv_fact(static_cast<std::size_t>(n) + 1, 1.0);
    for (int j = 1; j <= n; ++j) inv_fact[static_cast<std::size_t>(j)] = inv_fact[static_cast<std::size_t>(j - 1)] / j;

    WordPathStats stats;
    std::vector<double> delta(static_cast<std::size_t>(d));
    for (std::size_t c = 1; c < path.times.size(); ++c) {
        for (int j = 0; j < d; ++j)
            delta[static_cast<std::size_t>(j)] =
                path.points[c][static_cast<std::size_t>(j)] - path.points[c - 1][static_cast<std::size_t>(j)];
        for (int j = n; j >= 1; --j) {
            double acc = I[static_cast<std::size_t>(j)];
            double prod = 1.0;
            for (int r = j - 1; r >= 0; --r) {
                prod *= delta[static_cast<std::size_t>(word[static_cast<std::size_t>(r)] - 1)];
                acc += I[static_cast<std::size_t>(r)] * prod * inv_fact[static_cast<std::size_t>(j - r)];
            }
            I[static_cast<std::size_t>(j)] = acc;
        }
        stats.running_sup_abs = std::max(stats.running_sup_abs, std::fabs(I[static_cast<std::size_t>(n)]));
    }
    stats.final_value = I[static_cast<std::size_t>(n)];
    return stats;
}

double ito_word_coefficient(const PiecewiseLinearPath& path, std::span<const int> word) {
    const int n = static_cast<int>(word.size());
    std::vector<double> I(static_cast<std::size_t>(n) + 1, 0.0);
    I[0] = 1.0;
    for (std::size_t c = 1; c < path.times.size(); ++c) {
        for (int j = n; j >= 1; --j) {
            int letter = word[static_cast<std::size_t>(j - 1)] - 1;
            double delta = path.points[c][static_cast<std::size_t>(letter)] -
                           path.points[c - 1][static_cast<std::size_t>(letter)];
            I[static_cast<std::size_t>(j)] += I[static_cast<std::size_t>(j - 1)] * delta;
        }
    }
    return I[static_cast<std::size_t>(n)];
}

TruncatedTensorSeries ito_signature(const BrownianSample& sample, int trunc) {
    const int d = sample.d;
    TruncatedTensorSeries I = TruncatedTensorSeries::unit(d, trunc);
    std::vector<double> delta(static_cast<std::size_t>(d));
    const auto& pts = sample.path.points;
    for (std::size_t c = 1; c < pts.size(); ++c) {
        for (int j = 0; j < d; ++j)
            delta[static_cast<std::size_t>(j)] =
                pts[c][static_cast<std::size_t>(j)] - pts[c - 1][static_cast<std::size_t>(j)];
        for (int n = trunc; n >= 1; --n) {
            auto prev = I.level(n - 1);
            auto cur = I.level(n);
            std::size_t i = 0;
            for (std::size_t ip = 0; ip < prev.size(); ++ip) {
                double c0 = prev[ip];
                for (int j = 0; j < d; ++j, ++i) cur[i] += c0 * delta[static_cast<std::size_t>(j)];
            }
        }
    }
    return I;
}

double second_moment_bound(int n, double t) {
    return std::exp(std::lgamma(2.0 * n + 1) - 3.0 * std::lgamma(n + 1.0) + n * std::log(t) -
                    n * std::log(2.0));
}

double second_moment_bound_refined(int n, double t) {
    const double e_over = std::exp(1.0) / (std::sqrt(2.0) * kPi);
    return e_over * std::exp(n * std::log(2.0) + n * std::log(t) - 0.5 * std::log(static_cast<double>(n)) -
                             std::lgamma(n + 1.0));
}

double sup_moment_bound(int n, double dt) {
    if (n < 3) throw std::invalid_argument("sup_moment_bound: needs word length >= 3");
    const double c0 = (0.5 + std::sqrt(2.0)) * std::sqrt(std::exp(1.0) / (std::sqrt(2.0) * kPi));
    return c0 * std::exp(0.5 * n * std::log(2.0) - 0.25 * std::log(n - 2.0) -
                         0.5 * std::lgamma(n + 1.0) + 0.5 * n * std::log(dt));
}

namespace {

struct ScalarMoments {
    double sum = 0.0, sumsq = 0.0;
    long count = 0;
};

MomentReport make_report(std::span<const int> word, long trials, const ScalarMoments& m,
                         double bound, double refined) {
    MomentReport rep;
    rep.word.assign(word.begin(), word.end());
    rep.samples = trials;
    rep.mean = m.sum / static_cast<double>(trials);
    rep.second_moment = m.sumsq / static_cast<double>(trials);
    double var = trials >= 2
                     ? (m.sumsq - trials * rep.mean * rep.mean) / static_cast<double>(trials - 1)
                     : 0.0;
    rep.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
    rep.bound = bound;
    rep.refined_bound = refined;
    rep.pass = rep.mean <= rep.bound + 3.0 * rep.stderr_;
    return rep;
}

}  // namespace

MomentReport mc_second_moment(std::span<const int> word, double t, long trials, int depth,
                              std::uint64_t seed, int threads) {
    const int n = static_cast<int>(word.size());
    const int d = *std::max_element(word.begin(), word.end());
    auto acc_fn = [&](ScalarMoments& acc, std::size_t trial) {
        BrownianSample s =
            sample_brownian(d, t, depth, derive(seed, {static_cast<std::uint64_t>(trial)}));
        double c = word_coefficient_stats(s.path, word).final_value;
        double x = c * c;
        acc.sum += x;
        acc.sumsq += x * x;
        acc.count += 1;
    };
    auto combine = [](ScalarMoments& into, const ScalarMoments& from) {
        into.sum += from.sum;
        into.sumsq += from.sumsq;
        into.count += from.count;
    };
    ScalarMoments m =
        parallel_reduce<ScalarMoments>(static_cast<std::size_t>(trials), acc_fn, combine, threads);
    return make_report(word, trials, m, second_moment_bound(n, t), second_moment_bound_refined(n, t));
}

MomentReport mc_sup_moment(std::span<const int> word, double s, double t, long trials, int depth,
                           std::uint64_t seed, int threads) {
    const int n = static_cast<int>(word.size());
    if (n < 3) throw std::invalid_argument("mc_sup_moment: word length must be >= 3");
    if (!(s < t)) throw std::invalid_argument("mc_sup_moment: need s < t");
    const int d = *std::max_element(word.begin(), word.end());
    auto acc_fn = [&](ScalarMoments& acc, std::size_t trial) {
        // translation invariance: simulate on [0, t-s]
        BrownianSample bs =
            sample_brownian(d, t - s, depth, derive(seed, {static_cast<std::uint64_t>(trial)}));
        double x = word_coefficient_stats(bs.path, word).running_sup_abs;
        acc.sum += x;
        acc.sumsq += x * x;
        acc.count += 1;
    };
    auto combine = [](ScalarMoments& into, const ScalarMoments& from) {
        into.sum += from.sum;
        into.sumsq += from.sumsq;
        into.count += from.count;
    };
    ScalarMoments m =
        parallel_reduce<ScalarMoments>(static_cast<std::size_t>(trials), acc_fn, combine, threads);
    return make_report(word, trials, m, sup_moment_bound(n, t - s), 0.0);
}

}  // namespace sigtail
