#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sigtail/path.hpp"
#include "sigtail/tensor_series.hpp"

namespace sigtail {

/// Element of SO(d,1) in the hyperboloid model: (d+1)x(d+1) row-major
/// matrix G with G^-1 = J G^T J, J = diag(1,...,1,-1), and positive
/// (d+1,d+1) entry.
struct LorentzFrame {
    int d = 0;
    std::vector<double> m;  // (d+1)^2 row-major

    static LorentzFrame identity(int d);
    double at(int i, int j) const { return m[static_cast<std::size_t>(i * (d + 1) + j)]; }
    double& at(int i, int j) { return m[static_cast<std::size_t>(i * (d + 1) + j)]; }
    double height() const { return at(d, d); }
    double max_abs() const;
};

LorentzFrame multiply(const LorentzFrame& a, const LorentzFrame& b);

/// max-norm of G J G^T J - I; zero for exact group elements.
double lorentz_defect(const LorentzFrame& g);

/// Lorentz Gram-Schmidt on rows: J-orthonormalizes with the timelike
/// last row first, sign-fixed positive. Leaves exact group elements
/// unchanged up to rounding.
void reproject(LorentzFrame& g);

/// Closed-form exponential of the boost generator of x:
/// exp F(x) = I + (sinh r / r) F + ((cosh r - 1)/r^2) F^2, r = |x|_2,
/// with the series limits at r = 0.
LorentzFrame chord_exp(std::span<const double> x);

struct HyperbolicPoint {
    std::vector<double> x;  // d+1 coordinates, x*x = -1, last >= 1

    int d() const { return static_cast<int>(x.size()) - 1; }
    static HyperbolicPoint origin(int d);
    void validate(double tol = 1e-9) const;
};

double minkowski_dot(std::span<const double> a, std::span<const double> b);

/// Image of the base point o under the frame (its last column).
HyperbolicPoint frame_origin_image(const LorentzFrame& g);

/// rho(x,y) = acosh(-x*y), with -x*y clamped to [1, inf) within 1e-9.
double hyperbolic_distance(const HyperbolicPoint& a, const HyperbolicPoint& b);

struct DevelopmentTrace {
    double lambda = 1.0;
    std::vector<double> times;
    std::vector<HyperbolicPoint> points;
    std::vector<double> h;      // heights, = cosh rho
    std::vector<double> rho;    // distances to o
    std::vector<double> log_h;
    std::vector<LorentzFrame> frames;  // kept only on request
    double max_defect = 0.0;           // worst measurable Lorentz defect
};

/// Cartan development of the rescaled path lambda*gamma: the frame after
/// chord j is the product of exact chord exponentials, re-projected to
/// the group while entries are small enough for that to help. Throws if
/// the measurable Lorentz defect exceeds 1e-6 (blow-up guard).
DevelopmentTrace develop(const PiecewiseLinearPath& path, double lambda, bool keep_frames = false);

/// log of the hyperbolic height of the developed endpoint, by scaled
/// propagation of the frame's last row. Stable for lambda^2 t far beyond
/// double range of h itself.
double develop_log_height(const PiecewiseLinearPath& path, double lambda);

/// Height via the even part of the signature: sum_n lambda^(2n) Phi_n
/// applied to level 2n, Phi_n summing coefficients over pair-diagonal
/// words. Equals the development height up to the truncation tail.
double truncated_height_series(const TruncatedTensorSeries& sig, double lambda);

/// sum_{2n > N} (lambda * l)^{2n} / (2n)! with l the l1 length: an upper
/// bound on the series truncation error.
double height_series_tail_bound(double lambda, double l1_length, int trunc);

struct TriangleCheck {
    double a = 0;       // side from the cosine law
    double defect = 0;  // b + c - a
    double bound = 0;   // log(2 / (1 - cos theta))
    bool within_bound = false;
    bool monotone = false;  // f(lambda) = lambda(b+c) - a(lambda) nondecreasing
};

/// Hyperbolic triangle with sides b, c and enclosed angle theta.
TriangleCheck triangle_defect_check(double b, double c, double theta);

struct BrownianHeight {
    double log_h = 0.0;
    int depth_used = 0;  // after auto-refinement
};

/// Height of the developed Brownian sample; the dyadic depth is refined
/// until lambda * (max chord) <= 0.25 so chord exponentials stay
/// well-conditioned as lambda grows.
BrownianHeight develop_brownian_height(int d, double t, double lambda, int depth,
                                       std::uint64_t seed);

struct HeightSdePath {
    std::vector<double> times;
    std::vector<double> h;
};

/// Euler-Maruyama on the full frame for the Ito form of the development
/// equation: dG = lambda G F(dB) + (lambda^2/2) G diag(I_d, d) dt, with
/// per-step re-projection. Requires steps >= 100 lambda^2 t.
HeightSdePath ito_height_sde(int d, double t, double lambda, long steps, std::uint64_t seed);

struct HeightMomentCell {
    int d = 0;
    double mu = 0, lambda = 0, t = 0;
    long samples = 0;
    double mean = 0, stderr_ = 0, bound = 0;
    bool pass = false;
};

/// E[h^-mu] against exp(-lambda^2 mu (d-1-mu) t / 2).
HeightMomentCell height_moment_experiment(int d, double mu, double lambda, double t, long trials,
                                          int depth, std::uint64_t seed, int threads = 0);

}  // namespace sigtail
