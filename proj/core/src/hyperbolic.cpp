#include "sigtail/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

#include "sigtail/brownian.hpp"
#include "sigtail/numerics.hpp"
#include "sigtail/parallel.hpp"
#include "sigtail/rng.hpp"

namespace sigtail {

namespace {
// Re-projection helps while entries are modest; past that the +1/-1
// normalizations drown in cancellation error, and the defect itself
// stops being measurable in doubles (error ~ eps * |G|^2).
constexpr double kReprojectLimit = 1e3;
constexpr double kDefectMeasurableLimit = 1e4;
constexpr double kDriftGuard = 1e-6;
}  // namespace

LorentzFrame LorentzFrame::identity(int d) {
    LorentzFrame g;
    g.d = d;
    g.m.assign(static_cast<std::size_t>((d + 1) * (d + 1)), 0.0);
    for (int i = 0; i <= d; ++i) g.at(i, i) = 1.0;
    return g;
}

double LorentzFrame::max_abs() const {
    double v = 0.0;
    for (double x : m) v = std::max(v, std::fabs(x));
    return v;
}

LorentzFrame multiply(const LorentzFrame& a, const LorentzFrame& b) {
    if (a.d != b.d) throw std::invalid_argument("LorentzFrame multiply: dimension mismatch");
    const int n = a.d + 1;
    LorentzFrame c;
    c.d = a.d;
    c.m.assign(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

double lorentz_defect(const LorentzFrame& g) {
    const int n = g.d + 1;
    double worst = 0.0;
    // (G J G^T J)_{ij} = sum_k G_ik J_kk G_jk J_jj
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) {
                double term = g.at(i, k) * g.at(j, k);
                s += (k == n - 1) ? -term : term;
            }
            if (j == n - 1) s = -s;
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::fabs(s));
        }
    return worst;
}

namespace {

double j_dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i) s += a[i] * b[i];
    return s - a[n - 1] * b[n - 1];
}

}  // namespace

void reproject(LorentzFrame& g) {
    const int n = g.d + 1;
    std::vector<std::span<double>> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i)] = std::span<double>(g.m).subspan(
            static_cast<std::size_t>(i) * static_cast<std::size_t>(n), static_cast<std::size_t>(n));

    // timelike last row first
    auto v = rows[static_cast<std::size_t>(n - 1)];
    double q = -j_dot(v, v);
    if (!(q > 0)) throw std::runtime_error("reproject: last row not timelike");
    double inv = 1.0 / std::sqrt(q);
    if (v[static_cast<std::size_t>(n - 1)] < 0) inv = -inv;
    for (double& x : v) x *= inv;

    for (int i = 0; i < n - 1; ++i) {
        auto w = rows[static_cast<std::size_t>(i)];
        double a = j_dot(w, v);
        for (int j = 0; j < n; ++j)
            w[static_cast<std::size_t>(j)] += a * v[static_cast<std::size_t>(j)];
        for (int p = 0; p < i; ++p) {
            auto u = rows[static_cast<std::size_t>(p)];
            double b = j_dot(w, u);
            for (int j = 0; j < n; ++j)
                w[static_cast<std::size_t>(j)] -= b * u[static_cast<std::size_t>(j)];
        }
        double norm = std::sqrt(j_dot(w, w));
        if (!(norm > 0)) throw std::runtime_error("reproject: degenerate spacelike row");
        for (double& x : w) x /= norm;
    }
}

LorentzFrame chord_exp(std::span<const double> x) {
    const int d = static_cast<int>(x.size());
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    double r = std::sqrt(r2);

    double sinhc, coshm;  // sinh(r)/r and (cosh(r)-1)/r^2
    if (r < 1e-6) {
        sinhc = 1.0 + r2 / 6.0 + r2 * r2 / 120.0;
        coshm = 0.5 + r2 / 24.0 + r2 * r2 / 720.0;
    } else {
        sinhc = std::sinh(r) / r;
        coshm = (std::cosh(r) - 1.0) / r2;
    }

    // F(x)^2 = [[x x^T, 0], [0, r^2]]
    LorentzFrame g = LorentzFrame::identity(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j)
            g.at(i, j) += coshm * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
        g.at(i, d) = sinhc * x[static_cast<std::size_t>(i)];
        g.at(d, i) = sinhc * x[static_cast<std::size_t>(i)];
    }
    g.at(d, d) = 1.0 + coshm * r2;  // = cosh r
    return g;
}

HyperbolicPoint HyperbolicPoint::origin(int d) {
    HyperbolicPoint p;
    p.x.assign(static_cast<std::size_t>(d) + 1, 0.0);
    p.x.back() = 1.0;
    return p;
}

void HyperbolicPoint::validate(double tol) const {
    if (x.size() < 2) throw std::invalid_argument("HyperbolicPoint: needs d >= 1");
    double q = minkowski_dot(x, x);
    if (std::fabs(q + 1.0) > tol) throw std::invalid_argument("HyperbolicPoint: x*x != -1");
    if (x.back() < 1.0 - tol) throw std::invalid_argument("HyperbolicPoint: last coordinate < 1");
}

double minkowski_dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("minkowski_dot: size mismatch");
    return j_dot(a, b);
}

HyperbolicPoint frame_origin_image(const LorentzFrame& g) {
    HyperbolicPoint p;
    const int n = g.d + 1;
    p.x.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.x[static_cast<std::size_t>(i)] = g.at(i, n - 1);
    return p;
}

double hyperbolic_distance(const HyperbolicPoint& a, const HyperbolicPoint& b) {
    double c = -minkowski_dot(a.x, b.x);
    if (c < 1.0 - 1e-9) throw std::invalid_argument("hyperbolic_distance: points not on hyperboloid");
    return std::acosh(std::max(c, 1.0));
}

DevelopmentTrace develop(const PiecewiseLinearPath& path, double lambda, bool keep_frames) {
    if (!(lambda > 0)) throw std::invalid_argument("develop: lambda must be positive");
    path.validate();
    const int d = path.d;

    DevelopmentTrace trace;
    trace.lambda = lambda;
    LorentzFrame g = LorentzFrame::identity(d);
    std::vector<double> chord(static_cast<std::size_t>(d));

    auto record = [&](double time) {
        trace.times.push_back(time);
        HyperbolicPoint p = frame_origin_image(g);
        double h = p.x.back();
        trace.h.push_back(h);
        trace.log_h.push_back(std::log(h));
        trace.rho.push_back(std::acosh(std::max(h, 1.0)));
        trace.points.push_back(std::move(p));
        if (keep_frames) trace.frames.push_back(g);
    };
    record(path.times.front());

    for (std::size_t i = 1; i < path.times.size(); ++i) {
        for (int j = 0; j < d; ++j)
            chord[static_cast<std::size_t>(j)] =
                lambda * (path.points[i][static_cast<std::size_t>(j)] -
                          path.points[i - 1][static_cast<std::size_t>(j)]);
        g = multiply(g, chord_exp(chord));
        double scale = g.max_abs();
        if (scale <= kReprojectLimit) reproject(g);
        if (scale <= kDefectMeasurableLimit) {
            double defect = lorentz_defect(g);
            trace.max_defect = std::max(trace.max_defect, defect);
            if (defect > kDriftGuard)
                throw std::runtime_error("develop: Lorentz invariant drifted beyond 1e-6");
        }
        record(path.times[i]);
    }
    return trace;
}

double develop_log_height(const PiecewiseLinearPath& path, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("develop_log_height: lambda must be positive");
    const int d = path.d;
    const std::size_t n = static_cast<std::size_t>(d) + 1;

    // last row of the frame, rescaled into [0, 1e100) with log bookkeeping
    std::vector<double> row(n, 0.0), rf(n), rff(n);
    row[n - 1] = 1.0;
    double log_scale = 0.0;

    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t c = 1; c < path.times.size(); ++c) {
        double r2 = 0.0;
        for (int j = 0; j < d; ++j) {
            x[static_cast<std::size_t>(j)] = lambda * (path.points[c][static_cast<std::size_t>(j)] -
                                                       path.points[c - 1][static_cast<std::size_t>(j)]);
            r2 += x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        }
        double r = std::sqrt(r2);
        double sinhc, coshm;
        if (r < 1e-6) {
            sinhc = 1.0 + r2 / 6.0 + r2 * r2 / 120.0;
            coshm = 0.5 + r2 / 24.0 + r2 * r2 / 720.0;
        } else {
            sinhc = std::sinh(r) / r;
            coshm = (std::cosh(r) - 1.0) / r2;
        }
        // row <- row (I + sinhc F + coshm F^2)
        double dot = 0.0;
        for (int j = 0; j < d; ++j) dot += row[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        double last = row[n - 1];
        for (int j = 0; j < d; ++j) rf[static_cast<std::size_t>(j)] = last * x[static_cast<std::size_t>(j)];
        rf[n - 1] = dot;
        for (int j = 0; j < d; ++j) rff[static_cast<std::size_t>(j)] = dot * x[static_cast<std::size_t>(j)];
        rff[n - 1] = last * r2;
        for (std::size_t j = 0; j < n; ++j) row[j] += sinhc * rf[j] + coshm * rff[j];

        double h = row[n - 1];
        if (h > 1e100) {
            for (std::size_t j = 0; j < n; ++j) row[j] /= h;
            log_scale += std::log(h);
        }
        // invariant sum_i row_i^2 - h^2 = -1; cancellation noise grows like
        // steps^(1/2) eps h^2, so the 1e-6 guard is only meaningful while
        // h is small and before any rescale
        if (log_scale == 0.0 && h <= 100.0) {
            double inv = j_dot(row, row);
            if (std::fabs(inv + 1.0) > kDriftGuard)
                throw std::runtime_error("develop_log_height: row invariant drifted beyond 1e-6");
        }
    }
    double out = log_scale + std::log(row[n - 1]);
    if (!std::isfinite(out)) throw std::runtime_error("develop_log_height: non-finite height");
    return out;
}

double truncated_height_series(const TruncatedTensorSeries& sig, double lambda) {
    const int d = sig.dim();
    double total = 0.0;
    for (int twon = 0; twon <= sig.trunc(); twon += 2) {
        int n = twon / 2;
        double phi;
        if (twon == 0) {
            phi = sig.scalar();
        } else {
            auto lv = sig.level(twon);
            // sum over pair-diagonal words (w1=w2, w3=w4, ...)
            phi = 0.0;
            std::vector<int> pair(static_cast<std::size_t>(n), 0);
            for (;;) {
                std::size_t idx = 0;
                for (int j = 0; j < n; ++j) {
                    std::size_t letter = static_cast<std::size_t>(pair[static_cast<std::size_t>(j)]);
                    idx = (idx * static_cast<std::size_t>(d) + letter) * static_cast<std::size_t>(d) + letter;
                }
                phi += lv[idx];
                int j = n - 1;
                while (j >= 0 && pair[static_cast<std::size_t>(j)] == d - 1) --j;
                if (j < 0) break;
                ++pair[static_cast<std::size_t>(j)];
                for (int i = j + 1; i < n; ++i) pair[static_cast<std::size_t>(i)] = 0;
            }
        }
        total += std::pow(lambda, 2 * n) * phi;
    }
    return total;
}

double height_series_tail_bound(double lambda, double l1_length, int trunc) {
    double z = lambda * l1_length;
    double partial = 0.0;
    for (int twon = 0; twon <= trunc; twon += 2)
        partial += std::exp(twon * std::log(z) - std::lgamma(twon + 1.0));
    return std::cosh(z) - partial;
}

TriangleCheck triangle_defect_check(double b, double c, double theta) {
    if (!(b > 0) || !(c > 0)) throw std::invalid_argument("triangle_defect_check: b, c > 0");
    if (!(theta > 0) || !(theta < 3.14159265358979323846))
        throw std::invalid_argument("triangle_defect_check: theta in (0, pi)");
    const double r = std::cos(theta);

    auto side = [&](double bb, double cc) {
        double z = std::cosh(bb) * std::cosh(cc) - std::sinh(bb) * std::sinh(cc) * r;
        return std::acosh(std::max(z, 1.0));
    };

    TriangleCheck out;
    out.a = side(b, c);
    out.defect = b + c - out.a;
    out.bound = std::log(2.0 / (1.0 - r));
    out.within_bound = out.defect >= -1e-9 && out.defect <= out.bound + 1e-9;

    out.monotone = true;
    double prev = -1e300;
    for (double lam : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        double f = lam * (b + c) - side(lam * b, lam * c);
        if (f < prev - 1e-9) out.monotone = false;
        prev = f;
    }
    return out;
}

BrownianHeight develop_brownian_height(int d, double t, double lambda, int depth,
                                       std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("develop_brownian_height: d >= 2");
    BrownianHeight out;
    int k = depth;
    for (;;) {
        BrownianSample s = sample_brownian(d, t, k, seed);
        if (lambda * s.path.max_chord_l2() <= 0.25 || k >= 24) {
            out.log_h = develop_log_height(s.path, lambda);
            out.depth_used = k;
            return out;
        }
        ++k;
    }
}

HeightSdePath ito_height_sde(int d, double t, double lambda, long steps, std::uint64_t seed) {
    if (steps < static_cast<long>(100.0 * lambda * lambda * t))
        throw std::invalid_argument("ito_height_sde: steps must be >= 100 lambda^2 t");
    const int n = d + 1;
    const double dt = t / static_cast<double>(steps);
    const double sqdt = std::sqrt(dt);

    LorentzFrame g = LorentzFrame::identity(d);
    GaussianStream gs(derive(seed, {0x17e4ULL}));
    HeightSdePath out;
    out.times.reserve(static_cast<std::size_t>(steps) + 1);
    out.h.reserve(static_cast<std::size_t>(steps) + 1);
    out.times.push_back(0.0);
    out.h.push_back(1.0);

    std::vector<double> db(static_cast<std::size_t>(d));
    LorentzFrame next;
    next.d = d;
    next.m.assign(static_cast<std::size_t>(n * n), 0.0);
    for (long sidx = 0; sidx < steps; ++sidx) {
        for (int j = 0; j < d; ++j) db[static_cast<std::size_t>(j)] = sqdt * gs.next();
        // G += lambda G F(dB) + (lambda^2/2) G diag(I_d, d) dt
        for (int i = 0; i < n; ++i) {
            double gF_last = 0.0;
            for (int j = 0; j < d; ++j) gF_last += g.at(i, j) * db[static_cast<std::size_t>(j)];
            for (int j = 0; j < d; ++j)
                next.at(i, j) = g.at(i, j) + lambda * g.at(i, d) * db[static_cast<std::size_t>(j)] +
                                0.5 * lambda * lambda * dt * g.at(i, j);
            next.at(i, d) = g.at(i, d) + lambda * gF_last + 0.5 * lambda * lambda * dt * d * g.at(i, d);
        }
        g.m.swap(next.m);
        if (g.max_abs() <= kReprojectLimit) reproject(g);
        out.times.push_back(dt * static_cast<double>(sidx + 1));
        out.h.push_back(g.height());
    }
    return out;
}

HeightMomentCell height_moment_experiment(int d, double mu, double lambda, double t, long trials,
                                          int depth, std::uint64_t seed, int threads) {
    if (!(mu > 0) || mu > d - 1 + 1e-12)
        throw std::invalid_argument("height_moment_experiment: need 0 < mu <= d-1");
    struct Acc {
        double sum = 0, sumsq = 0;
        long count = 0;
    };
    auto acc_fn = [&](Acc& acc, std::size_t trial) {
        BrownianHeight bh = develop_brownian_height(
            d, t, lambda, depth, derive(seed, {static_cast<std::uint64_t>(trial)}));
        double v = std::exp(-mu * bh.log_h);  // h^-mu <= 1, no overflow
        acc.sum += v;
        acc.sumsq += v * v;
        acc.count += 1;
    };
    auto combine = [](Acc& a, const Acc& b) {
        a.sum += b.sum;
        a.sumsq += b.sumsq;
        a.count += b.count;
    };
    Acc m = parallel_reduce<Acc>(static_cast<std::size_t>(trials), acc_fn, combine, threads);

    HeightMomentCell cell;
    cell.d = d;
    cell.mu = mu;
    cell.lambda = lambda;
    cell.t = t;
    cell.samples = trials;
    cell.mean = m.sum / static_cast<double>(trials);
    double var = trials >= 2
                     ? (m.sumsq - trials * cell.mean * cell.mean) / static_cast<double>(trials - 1)
                     : 0.0;
    cell.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
    cell.bound = std::exp(-0.5 * lambda * lambda * mu * (d - 1 - mu) * t);
    cell.pass = cell.mean <= cell.bound + 3.0 * cell.stderr_;
    return cell;
}

}  // namespace sigtail
