#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sigtail/path.hpp"
#include "sigtail/tensor_series.hpp"

namespace sigtail {

/// Dyadic piecewise-linear Brownian sample on [0, T] at mesh T/2^k.
///
/// Built by the midpoint (bridge) construction with one Gaussian per
/// dyadic node, keyed by (seed, coordinate, level, node), so refining k
/// by one preserves the coarser skeleton bit for bit.
struct BrownianSample {
    int d = 0;
    double horizon = 1.0;
    int depth = 0;  // dyadic depth k; 2^k chords
    std::uint64_t seed = 0;
    PiecewiseLinearPath path;
};

BrownianSample sample_brownian(int d, double horizon, int depth, std::uint64_t seed);

/// Closed form for the expected Stratonovich signature at time t: odd
/// levels vanish and level 2n is (t^n / (n! 2^n)) (sum_i e_i (x) e_i)^(x)n.
TruncatedTensorSeries expected_signature(int d, double t, int trunc);

struct McSignatureEstimate {
    TruncatedTensorSeries mean;
    TruncatedTensorSeries stderr_;  // per-coefficient standard error
    long samples = 0;
    bool has_stderr = false;  // false for degenerate M = 1 runs
};

/// Monte Carlo mean of M chord-path signatures with per-trial streams
/// derived from (seed, trial).
McSignatureEstimate mc_expected_signature(int d, double t, int trunc, long trials, int depth,
                                          std::uint64_t seed, int threads = 0);

struct WordPathStats {
    double final_value = 0.0;
    double running_sup_abs = 0.0;  // sup over grid vertices of |coefficient|
};

/// Stratonovich coefficient of one word along a piecewise-linear path,
/// by the prefix recursion over chords (exact chord algebra; cost
/// O(|word|^2) per chord instead of a full signature).
WordPathStats word_coefficient_stats(const PiecewiseLinearPath& path, std::span<const int> word);

/// Ito coefficient of one word by the Euler hierarchy on the path grid.
double ito_word_coefficient(const PiecewiseLinearPath& path, std::span<const int> word);

/// Full Ito iterated-integral hierarchy dI^n = I^(n-1) (x) dB by the
/// Euler scheme on the sample's dyadic grid. Level 1 is the increment
/// exactly. Distinct from the chord (Stratonovich) signature pipeline.
TruncatedTensorSeries ito_signature(const BrownianSample& sample, int trunc);

struct MomentReport {
    std::vector<int> word;
    long samples = 0;
    double mean = 0.0;           // monitored statistic
    double second_moment = 0.0;  // of the statistic
    double stderr_ = 0.0;
    double bound = 0.0;
    double refined_bound = 0.0;  // Stirling-relaxed form; 0 if n/a
    bool pass = false;           // mean <= bound + 3 stderr
};

/// E|coefficient|^2 of the word at time t versus the closed-form bound
/// (2n)!/(n!)^2 * t^n/(n! 2^n) and its Stirling relaxation.
MomentReport mc_second_moment(std::span<const int> word, double t, long trials, int depth,
                              std::uint64_t seed, int threads = 0);

/// E[sup_{s<=u<=t} |coefficient|] along the dyadic grid versus the bound
/// (1/2+sqrt2) (e/(sqrt2 pi))^(1/2) 2^(n/2) / ((n-2)^(1/4) sqrt(n!)) (t-s)^(n/2).
/// Requires |word| >= 3.
MomentReport mc_sup_moment(std::span<const int> word, double s, double t, long trials, int depth,
                           std::uint64_t seed, int threads = 0);

double second_moment_bound(int n, double t);
double second_moment_bound_refined(int n, double t);
double sup_moment_bound(int n, double dt);

}  // namespace sigtail
