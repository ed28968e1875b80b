#include "sigtail/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "sigtail/brownian.hpp"
#include "sigtail/parallel.hpp"
#include "sigtail/rng.hpp"

namespace sigtail {

int default_window_lo(int trunc) { return std::max(3, trunc - 6); }

AsymptoticsReport estimate_limsup(const SignatureRecord& rec, double p, const NormSpec& spec,
                                  int window_lo, int window_hi) {
    const int N = rec.series().trunc();
    if (window_lo < 0) window_lo = default_window_lo(N);
    if (window_hi < 0) window_hi = N;
    if (window_lo < 1 || window_hi > N || window_lo > window_hi)
        throw std::invalid_argument("estimate_limsup: bad window");

    AsymptoticsReport rep;
    rep.s = rec.s();
    rep.t = rec.t();
    rep.p = p;
    rep.norm = spec.kind;
    rep.window_lo = window_lo;
    rep.window_hi = window_hi;
    rep.a = normalized_level_sequence(rec, p, spec);

    double best = 0.0;
    for (int n = window_lo; n <= window_hi; ++n)
        best = std::max(best, rep.a[static_cast<std::size_t>(n - 1)]);
    rep.limsup_hat = best;
    rep.kappa_hat = best / (rep.t - rep.s);
    rep.degenerate = best == 0.0;
    return rep;
}

namespace {

double kappa_of_sample(int d, double t, int depth, int trunc, double p, const NormSpec& spec,
                       std::uint64_t trial_seed, int window_lo, int window_hi) {
    BrownianSample s = sample_brownian(d, t, depth, trial_seed);
    SignatureRecord rec = signature(s.path, trunc);
    return estimate_limsup(rec, p, spec, window_lo, window_hi).kappa_hat;
}

}  // namespace

ConcentrationReport concentration_test(int d, double t, int trials, int depth, int trunc,
                                       double p, const NormSpec& spec, std::uint64_t seed,
                                       int window_lo, int window_hi, int threads) {
    if (trials < 1) throw std::invalid_argument("concentration_test: trials >= 1");
    struct Acc {
        std::vector<std::pair<std::size_t, double>> vals;
    };
    auto acc_fn = [&](Acc& acc, std::size_t trial) {
        double kappa = kappa_of_sample(d, t, depth, trunc, p, spec,
                                       derive(seed, {static_cast<std::uint64_t>(trial)}),
                                       window_lo, window_hi);
        acc.vals.emplace_back(trial, kappa);
    };
    auto combine = [](Acc& a, const Acc& b) {
        a.vals.insert(a.vals.end(), b.vals.begin(), b.vals.end());
    };
    Acc all = parallel_reduce<Acc>(static_cast<std::size_t>(trials), acc_fn, combine, threads);
    std::sort(all.vals.begin(), all.vals.end());

    ConcentrationReport rep;
    for (auto& [i, kappa] : all.vals) rep.kappas.push_back(kappa);
    rep.has_dispersion = trials >= 2;
    if (rep.has_dispersion) {
        rep.q = quartiles(rep.kappas);
        rep.rel_iqr = (rep.q.q3 - rep.q.q1) / rep.q.median;
        rep.pass_dispersion = rep.rel_iqr <= 0.35;
    }

    // interval stability on one extra sample: the two half-interval
    // estimates come from Chen splits of the same path
    BrownianSample s = sample_brownian(d, t, depth, derive(seed, {0x5b1fULL}));
    SignatureRecord left = signature(s.path, 0.0, t / 2, trunc);
    SignatureRecord right = signature(s.path, t / 2, t, trunc);
    double k1 = estimate_limsup(left, p, spec, window_lo, window_hi).kappa_hat;
    double k2 = estimate_limsup(right, p, spec, window_lo, window_hi).kappa_hat;
    rep.split_ratio = k2 == 0.0 ? std::numeric_limits<double>::infinity() : k1 / k2;
    rep.pass_split = rep.split_ratio >= 0.6 && rep.split_ratio <= 1.6;
    return rep;
}

SubadditivityReport subadditivity_check(const PiecewiseLinearPath& path, double s, double u,
                                        double t, int trunc, double p, const NormSpec& spec,
                                        int window_lo, int window_hi, double slack) {
    if (!(s < u && u < t)) throw std::invalid_argument("subadditivity_check: need s < u < t");
    SignatureRecord whole = signature(path, s, t, trunc);
    SignatureRecord a = signature(path, s, u, trunc);
    SignatureRecord b = signature(path, u, t, trunc);

    SubadditivityReport rep;
    rep.lhs = estimate_limsup(whole, p, spec, window_lo, window_hi).limsup_hat;
    rep.rhs = estimate_limsup(a, p, spec, window_lo, window_hi).limsup_hat +
              estimate_limsup(b, p, spec, window_lo, window_hi).limsup_hat;
    rep.margin = rep.rhs * (1.0 + slack) - rep.lhs;
    rep.pass = rep.margin >= 0.0;
    return rep;
}

double neoclassical_worst_ratio(double a, double b, double p, int n_max) {
    if (a < 0 || b < 0) throw std::invalid_argument("neoclassical_worst_ratio: a, b >= 0");
    if (p < 1) throw std::invalid_argument("neoclassical_worst_ratio: p >= 1");
    if (a + b == 0) throw std::invalid_argument("neoclassical_worst_ratio: a + b > 0");
    const double la = a > 0 ? std::log(a) : 0.0;
    const double lb = b > 0 ? std::log(b) : 0.0;
    double worst = 0.0;
    for (int N = 0; N <= n_max; ++N) {
        double log_lhs = kNegInf;
        for (int i = 0; i <= N; ++i) {
            if ((a == 0.0 && i > 0) || (b == 0.0 && i < N)) continue;
            double lt = (i / p) * la + ((N - i) / p) * lb - half_factorial_log(i, p) -
                        half_factorial_log(N - i, p);
            log_lhs = log_add_exp(log_lhs, lt);
        }
        double log_rhs =
            std::log(p) + (N / p) * std::log(a + b) - half_factorial_log(N, p);
        worst = std::max(worst, std::exp(log_lhs - log_rhs));
    }
    return worst;
}

FactorialRatioSweep factorial_ratio_check(double alpha, double p, int n_max) {
    if (!(alpha > 0) || p < 1) throw std::invalid_argument("factorial_ratio_check: alpha > 0, p >= 1");
    int n_lo = static_cast<int>(std::floor(2 * alpha)) + 1;
    if (n_max <= n_lo) throw std::invalid_argument("factorial_ratio_check: n_max too small");
    auto value = [&](int n) {
        return std::exp(half_factorial_log(n, p) - half_factorial_log(n - alpha, p) -
                        (alpha / p) * std::log(static_cast<double>(n)));
    };
    FactorialRatioSweep sweep;
    for (int n = n_lo; n <= n_max; ++n) sweep.fitted_c = std::max(sweep.fitted_c, value(n));
    int n90 = std::max(n_lo, static_cast<int>(0.9 * n_max));
    sweep.tail_growth = value(n_max) - value(n90);
    sweep.bounded = sweep.tail_growth <= 5e-3 * sweep.fitted_c;
    return sweep;
}

std::vector<double> isotonic_fit(std::span<const double> y) {
    // pool adjacent violators with uniform weights
    std::vector<double> level(y.begin(), y.end());
    std::vector<int> weight(y.size(), 1);
    std::size_t m = 0;  // blocks in use
    for (std::size_t i = 0; i < y.size(); ++i) {
        level[m] = y[i];
        weight[m] = 1;
        ++m;
        while (m >= 2 && level[m - 2] > level[m - 1]) {
            level[m - 2] = (level[m - 2] * weight[m - 2] + level[m - 1] * weight[m - 1]) /
                           (weight[m - 2] + weight[m - 1]);
            weight[m - 2] += weight[m - 1];
            --m;
        }
    }
    std::vector<double> out;
    out.reserve(y.size());
    for (std::size_t b = 0; b < m; ++b)
        for (int r = 0; r < weight[b]; ++r) out.push_back(level[b]);
    return out;
}

RecoveryResult recover_parametrization(const PiecewiseLinearPath& path, double kappa,
                                       std::span<const double> grid,
                                       std::span<const double> sigma_target, int trunc, double p,
                                       const NormSpec& spec, int window_lo, int window_hi) {
    if (!(kappa > 0)) throw std::invalid_argument("recover_parametrization: kappa must be positive");
    if (grid.size() != sigma_target.size())
        throw std::invalid_argument("recover_parametrization: grid/target size mismatch");

    auto records = prefix_signatures(path, grid, trunc);
    std::vector<double> raw;
    raw.reserve(records.size());
    for (const auto& rec : records)
        raw.push_back(estimate_limsup(rec, p, spec, window_lo, window_hi).limsup_hat / kappa);

    RecoveryResult out;
    out.grid.assign(grid.begin(), grid.end());
    out.sigma_hat = isotonic_fit(raw);
    for (std::size_t i = 0; i < out.sigma_hat.size(); ++i)
        out.sup_error = std::max(out.sup_error, std::fabs(out.sigma_hat[i] - sigma_target[i]));
    return out;
}

BoundLedger ito_bound_check(int d, double t, int samples, int trunc, int depth,
                            std::uint64_t seed, int window_lo, int window_hi, int threads) {
    struct Acc {
        std::vector<std::pair<std::size_t, double>> vals;
    };
    NormSpec l1{NormKind::L1Proj, 0, 0};
    auto acc_fn = [&](Acc& acc, std::size_t trial) {
        BrownianSample s =
            sample_brownian(d, t, depth, derive(seed, {0x170ULL, static_cast<std::uint64_t>(trial)}));
        SignatureRecord rec(0.0, t, ito_signature(s, trunc));
        acc.vals.emplace_back(trial, estimate_limsup(rec, 2.0, l1, window_lo, window_hi).kappa_hat);
    };
    auto combine = [](Acc& a, const Acc& b) {
        a.vals.insert(a.vals.end(), b.vals.begin(), b.vals.end());
    };
    Acc all = parallel_reduce<Acc>(static_cast<std::size_t>(samples), acc_fn, combine, threads);
    std::sort(all.vals.begin(), all.vals.end());

    BoundLedger ledger;
    ledger.d = d;
    ledger.lower = d / 2.0;
    ledger.upper = d * d / 2.0;
    for (auto& [i, kappa] : all.vals) ledger.kappas.push_back(kappa);
    ledger.q = quartiles(ledger.kappas);
    ledger.pass = ledger.q.median >= ledger.slack_lo * ledger.lower &&
                  ledger.q.median <= ledger.slack_hi * ledger.upper;
    return ledger;
}

}  // namespace sigtail
