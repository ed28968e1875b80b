#include "sigtail/tensor_series.hpp"

#include <cmath>
#include <cstring>

namespace sigtail {

std::size_t pow_size(int d, int n) {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(d);
    return s;
}

TruncatedTensorSeries::TruncatedTensorSeries(int dim, int trunc) : dim_(dim), trunc_(trunc) {
    if (dim < 1) throw std::invalid_argument("TruncatedTensorSeries: dim must be >= 1");
    if (trunc < 0) throw std::invalid_argument("TruncatedTensorSeries: trunc must be >= 0");
    levels_.resize(static_cast<std::size_t>(trunc) + 1);
    for (int n = 0; n <= trunc; ++n) levels_[static_cast<std::size_t>(n)].assign(pow_size(dim, n), 0.0);
}

TruncatedTensorSeries TruncatedTensorSeries::unit(int dim, int trunc) {
    TruncatedTensorSeries u(dim, trunc);
    u.levels_[0][0] = 1.0;
    return u;
}

std::size_t word_index(int d, std::span<const int> word) {
    std::size_t idx = 0;
    for (int letter : word) {
        if (letter < 1 || letter > d) throw std::out_of_range("word letter outside 1..d");
        idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(letter - 1);
    }
    return idx;
}

std::vector<int> word_from_index(int d, int n, std::size_t index) {
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
        w[static_cast<std::size_t>(j)] = static_cast<int>(index % static_cast<std::size_t>(d)) + 1;
        index /= static_cast<std::size_t>(d);
    }
    return w;
}

double TruncatedTensorSeries::coeff(std::span<const int> word) const {
    int n = static_cast<int>(word.size());
    if (n > trunc_) throw std::out_of_range("word longer than truncation");
    return levels_[static_cast<std::size_t>(n)][word_index(dim_, word)];
}

double& TruncatedTensorSeries::coeff(std::span<const int> word) {
    int n = static_cast<int>(word.size());
    if (n > trunc_) throw std::out_of_range("word longer than truncation");
    return levels_[static_cast<std::size_t>(n)][word_index(dim_, word)];
}

double TruncatedTensorSeries::coeff(std::initializer_list<int> word) const {
    return coeff(std::span<const int>(word.begin(), word.size()));
}

bool TruncatedTensorSeries::all_finite() const {
    for (const auto& lv : levels_)
        for (double c : lv)
            if (!std::isfinite(c)) return false;
    return true;
}

double TruncatedTensorSeries::max_abs() const {
    double m = 0.0;
    for (const auto& lv : levels_)
        for (double c : lv) m = std::max(m, std::fabs(c));
    return m;
}

TruncatedTensorSeries& TruncatedTensorSeries::operator+=(const TruncatedTensorSeries& o) {
    axpy(1.0, o);
    return *this;
}

TruncatedTensorSeries& TruncatedTensorSeries::operator*=(double c) {
    for (auto& lv : levels_)
        for (double& x : lv) x *= c;
    return *this;
}

void TruncatedTensorSeries::axpy(double c, const TruncatedTensorSeries& o) {
    if (o.dim_ != dim_ || o.trunc_ != trunc_)
        throw std::invalid_argument("axpy: dimension/truncation mismatch");
    for (int n = 0; n <= trunc_; ++n) {
        auto& dst = levels_[static_cast<std::size_t>(n)];
        const auto& src = o.levels_[static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += c * src[i];
    }
}

TruncatedTensorSeries truncated_product(const TruncatedTensorSeries& a,
                                        const TruncatedTensorSeries& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("truncated_product: dimension mismatch");
    if (a.trunc() != b.trunc()) throw std::invalid_argument("truncated_product: truncation mismatch");
    const int d = a.dim();
    const int N = a.trunc();
    TruncatedTensorSeries z(d, N);
    for (int n = 0; n <= N; ++n) {
        auto out = z.level(n);
        for (int k = 0; k <= n; ++k) {
            auto la = a.level(k);
            auto lb = b.level(n - k);
            // out[ia * d^(n-k) + ib] += la[ia] * lb[ib], contiguous in ib.
            std::size_t stride = lb.size();
            for (std::size_t ia = 0; ia < la.size(); ++ia) {
                double ca = la[ia];
                if (ca == 0.0) continue;
                double* dst = out.data() + ia * stride;
                for (std::size_t ib = 0; ib < stride; ++ib) dst[ib] += ca * lb[ib];
            }
        }
    }
    return z;
}

TruncatedTensorSeries segment_exp(std::span<const double> v, int trunc) {
    const int d = static_cast<int>(v.size());
    TruncatedTensorSeries s(d, trunc);
    s.scalar() = 1.0;
    for (int n = 1; n <= trunc; ++n) {
        auto prev = s.level(n - 1);
        auto cur = s.level(n);
        double inv = 1.0 / static_cast<double>(n);
        std::size_t i = 0;
        for (std::size_t ip = 0; ip < prev.size(); ++ip) {
            double c = prev[ip] * inv;
            for (int j = 0; j < d; ++j) cur[i++] = c * v[static_cast<std::size_t>(j)];
        }
    }
    return s;
}

namespace {

// Flat scratch for the layered recursion; one per thread, regrown on
// shape change so the per-chord path has no allocations.
struct SegmentConcatScratch {
    int d = 0, N = -1;
    std::vector<std::size_t> offset;  // offset[l] of level l in a flat buffer
    std::vector<double> a, b;
    std::vector<double> inv_fact;

    void resize(int dim, int trunc) {
        if (d == dim && N == trunc) return;
        d = dim;
        N = trunc;
        offset.assign(static_cast<std::size_t>(N) + 2, 0);
        for (int l = 0; l <= N; ++l)
            offset[static_cast<std::size_t>(l) + 1] =
                offset[static_cast<std::size_t>(l)] + pow_size(d, l);
        a.assign(offset.back(), 0.0);
        b.assign(offset.back(), 0.0);
        inv_fact.assign(static_cast<std::size_t>(N) + 1, 1.0);
        for (int r = 1; r <= N; ++r)
            inv_fact[static_cast<std::size_t>(r)] = inv_fact[static_cast<std::size_t>(r - 1)] / r;
    }
};

}  // namespace

void concat_segment_exp(TruncatedTensorSeries& x, std::span<const double> v) {
    const int d = x.dim();
    const int N = x.trunc();
    if (static_cast<int>(v.size()) != d)
        throw std::invalid_argument("concat_segment_exp: dimension mismatch");
    if (N == 0) return;

    thread_local SegmentConcatScratch ws;
    ws.resize(d, N);

    // Layers indexed by r = N..0; layer r holds A^(r)_l for l = 0..N-r,
    // A^(r)_l = x_l / r! + A^(r+1)_{l-1} (x) v, with A^(r+1)_{-1} = 0.
    // The r = 0 layer is x (x) segment_exp(v).
    double* prev = ws.a.data();
    double* cur = ws.b.data();
    prev[0] = x.scalar() * ws.inv_fact[static_cast<std::size_t>(N)];

    for (int r = N - 1; r >= 0; --r) {
        const int lmax = N - r;
        const double f = ws.inv_fact[static_cast<std::size_t>(r)];
        cur[0] = x.scalar() * f;
        for (int l = 1; l <= lmax; ++l) {
            const double* xl = x.level(l).data();
            const double* pa = prev + ws.offset[static_cast<std::size_t>(l - 1)];
            double* out = cur + ws.offset[static_cast<std::size_t>(l)];
            const std::size_t na = pow_size(d, l - 1);
            std::size_t i = 0;
            for (std::size_t ia = 0; ia < na; ++ia) {
                const double c = pa[ia];
                for (int j = 0; j < d; ++j, ++i)
                    out[i] = xl[i] * f + c * v[static_cast<std::size_t>(j)];
            }
        }
        std::swap(prev, cur);
    }
    for (int l = 0; l <= N; ++l) {
        auto dst = x.level(l);
        std::memcpy(dst.data(), prev + ws.offset[static_cast<std::size_t>(l)],
                    dst.size() * sizeof(double));
    }
}

double max_abs_diff(const TruncatedTensorSeries& a, const TruncatedTensorSeries& b) {
    if (a.dim() != b.dim() || a.trunc() != b.trunc())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (int n = 0; n <= a.trunc(); ++n) {
        auto la = a.level(n);
        auto lb = b.level(n);
        for (std::size_t i = 0; i < la.size(); ++i) m = std::max(m, std::fabs(la[i] - lb[i]));
    }
    return m;
}

}  // namespace sigtail
