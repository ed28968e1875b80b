#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sigtail/norms.hpp"
#include "sigtail/numerics.hpp"
#include "sigtail/path.hpp"
#include "sigtail/signature.hpp"

namespace sigtail {

/// Default trailing window for the limsup surrogate: [max(3, N-6), N].
/// The sequence a_n oscillates with level parity, so a windowed max is
/// used instead of the last value.
int default_window_lo(int trunc);

struct AsymptoticsReport {
    double s = 0, t = 1;
    double p = 2;
    NormKind norm = NormKind::L1Proj;
    std::vector<double> a;  // a_1..a_N
    int window_lo = 3, window_hi = 0;
    double limsup_hat = 0;  // max a_n over the window
    double kappa_hat = 0;   // limsup_hat / (t - s)
    bool degenerate = false;
};

AsymptoticsReport estimate_limsup(const SignatureRecord& rec, double p, const NormSpec& spec,
                                  int window_lo = -1, int window_hi = -1);

struct ConcentrationReport {
    std::vector<double> kappas;  // per-trial windowed estimates
    Quartiles q;
    double rel_iqr = 0;  // (q3-q1)/median
    bool has_dispersion = false;
    bool pass_dispersion = false;  // rel_iqr <= 0.35
    double split_ratio = 0;        // kappa on [0,t/2] over kappa on [t/2,t], one sample
    bool pass_split = false;       // within [0.6, 1.6]
};

/// Dispersion of kappa estimates across independent Brownian samples,
/// the finite-size surrogate for the almost-sure constancy of the
/// normalized limsup.
ConcentrationReport concentration_test(int d, double t, int trials, int depth, int trunc,
                                       double p, const NormSpec& spec, std::uint64_t seed,
                                       int window_lo = -1, int window_hi = -1, int threads = 0);

struct SubadditivityReport {
    double lhs = 0;     // windowed estimate over [s,t], time-unnormalized
    double rhs = 0;     // sum of estimates over [s,u] and [u,t]
    double margin = 0;  // rhs * (1 + slack) - lhs
    bool pass = false;
};

/// Windowed check of l(s,t) <= l(s,u) + l(u,t) with a 15% finite-window
/// slack on the right-hand side; all three estimates reuse the same path.
SubadditivityReport subadditivity_check(const PiecewiseLinearPath& path, double s, double u,
                                        double t, int trunc, double p, const NormSpec& spec,
                                        int window_lo = -1, int window_hi = -1,
                                        double slack = 0.15);

/// max over N <= n_max of LHS/RHS in the fractional binomial inequality
/// sum_i a^(i/p) b^((N-i)/p) / ((i/p)!((N-i)/p)!) <= p (a+b)^(N/p)/(N/p)!,
/// evaluated in the log domain.
double neoclassical_worst_ratio(double a, double b, double p, int n_max);

struct FactorialRatioSweep {
    double fitted_c = 0;     // max over n of ((n/p)!/((n-alpha)/p)!) / n^(alpha/p)
    double tail_growth = 0;  // value(n_max) - value(0.9 n_max)
    bool bounded = false;    // no growth trend in the last decade of n
};

FactorialRatioSweep factorial_ratio_check(double alpha, double p, int n_max);

struct RecoveryResult {
    std::vector<double> grid;
    std::vector<double> sigma_hat;  // isotonic-cleaned, sigma_hat(0)=0 implicit
    double sup_error = 0;           // against the supplied target
};

/// Parametrization recovery: sigma_hat(g) = limsup-estimate over [0,g]
/// divided by kappa, cleaned up by pool-adjacent-violators. kappa must
/// be positive.
RecoveryResult recover_parametrization(const PiecewiseLinearPath& path, double kappa,
                                       std::span<const double> grid,
                                       std::span<const double> sigma_target, int trunc, double p,
                                       const NormSpec& spec, int window_lo = -1,
                                       int window_hi = -1);

struct BoundLedger {
    int d = 0;
    double lower = 0;  // theoretical lower bound on kappa
    double upper = 0;  // theoretical upper bound
    std::vector<double> kappas;
    Quartiles q;
    double slack_lo = 0.4, slack_hi = 1.25;
    bool pass = false;  // median within [slack_lo * lower, slack_hi * upper]
};

/// Windowed kappa estimates for the Ito iterated-integral hierarchy
/// under the coordinate l1 norm, against d/2 and d^2/2 with the global
/// slack policy.
BoundLedger ito_bound_check(int d, double t, int samples, int trunc, int depth,
                            std::uint64_t seed, int window_lo = -1, int window_hi = -1,
                            int threads = 0);

/// Isotonic regression by pool-adjacent-violators.
std::vector<double> isotonic_fit(std::span<const double> y);

}  // namespace sigtail
