#include "sigtail/shuffle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace sigtail {

Permutation Permutation::identity(int n) {
    Permutation p;
    p.image.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.image[static_cast<std::size_t>(i)] = i + 1;
    return p;
}

Permutation Permutation::reversal(int n) {
    Permutation p;
    p.image.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.image[static_cast<std::size_t>(i)] = n - i;
    return p;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.image.assign(image.size(), 0);
    for (std::size_t i = 0; i < image.size(); ++i)
        inv.image[static_cast<std::size_t>(image[i] - 1)] = static_cast<int>(i) + 1;
    return inv;
}

bool Permutation::is_bijection() const {
    std::vector<bool> seen(image.size(), false);
    for (int v : image) {
        if (v < 1 || v > static_cast<int>(image.size())) return false;
        if (seen[static_cast<std::size_t>(v - 1)]) return false;
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    return true;
}

std::vector<double> apply_permutation(const Permutation& sigma, std::span<const double> level, int d) {
    const int n = sigma.arity();
    if (pow_size(d, n) != level.size())
        throw std::invalid_argument("apply_permutation: arity does not match level size");
    std::vector<double> out(level.size(), 0.0);
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (std::size_t w = 0; w < level.size(); ++w) {
        std::size_t rest = w;
        for (int j = n - 1; j >= 0; --j) {
            digits[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(d));
            rest /= static_cast<std::size_t>(d);
        }
        // basis word w maps to w o sigma: letter j of the image is w_{sigma(j)}
        std::size_t u = 0;
        for (int j = 0; j < n; ++j)
            u = u * static_cast<std::size_t>(d) +
                static_cast<std::size_t>(digits[static_cast<std::size_t>(sigma.image[static_cast<std::size_t>(j)] - 1)]);
        out[u] = level[w];
    }
    return out;
}

namespace {

/// Visits every n-subset of {0,...,m-1} in lexicographic order.
template <class F>
void for_each_combination(int m, int n, F&& f) {
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(i)] = i;
    for (;;) {
        f(std::span<const int>(pos));
        int i = n - 1;
        while (i >= 0 && pos[static_cast<std::size_t>(i)] == m - n + i) --i;
        if (i < 0) break;
        ++pos[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

std::vector<Permutation> enumerate_shuffles(int n, int k) {
    std::vector<Permutation> result;
    const int m = n + k;
    for_each_combination(m, n, [&](std::span<const int> s) {
        Permutation p;
        p.image.assign(static_cast<std::size_t>(m), 0);
        std::vector<bool> taken(static_cast<std::size_t>(m), false);
        for (int r = 0; r < n; ++r) {
            p.image[static_cast<std::size_t>(r)] = s[static_cast<std::size_t>(r)] + 1;
            taken[static_cast<std::size_t>(s[static_cast<std::size_t>(r)])] = true;
        }
        int r = n;
        for (int j = 0; j < m; ++j)
            if (!taken[static_cast<std::size_t>(j)]) p.image[static_cast<std::size_t>(r++)] = j + 1;
        result.push_back(std::move(p));
    });
    return result;
}

std::vector<double> shuffle_product(std::span<const double> a, int n,
                                    std::span<const double> b, int k, int d) {
    if (a.size() != pow_size(d, n) || b.size() != pow_size(d, k))
        throw std::invalid_argument("shuffle_product: level sizes do not match arities");
    const int m = n + k;
    std::vector<double> out(pow_size(d, m), 0.0);
    std::vector<int> digits(static_cast<std::size_t>(m));
    for_each_combination(m, n, [&](std::span<const int> s) {
        std::vector<bool> in_s(static_cast<std::size_t>(m), false);
        for (int p : s) in_s[static_cast<std::size_t>(p)] = true;
        for (std::size_t w = 0; w < out.size(); ++w) {
            std::size_t rest = w;
            for (int j = m - 1; j >= 0; --j) {
                digits[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(d));
                rest /= static_cast<std::size_t>(d);
            }
            std::size_t ia = 0, ib = 0;
            for (int j = 0; j < m; ++j) {
                if (in_s[static_cast<std::size_t>(j)])
                    ia = ia * static_cast<std::size_t>(d) + static_cast<std::size_t>(digits[static_cast<std::size_t>(j)]);
                else
                    ib = ib * static_cast<std::size_t>(d) + static_cast<std::size_t>(digits[static_cast<std::size_t>(j)]);
            }
            out[w] += a[ia] * b[ib];
        }
    });
    return out;
}

GroupLikeReport is_group_like(const TruncatedTensorSeries& g, double tol) {
    if (std::fabs(g.scalar() - 1.0) > 1e-12)
        throw std::invalid_argument("is_group_like: level 0 must equal 1");
    const int d = g.dim();
    const int N = g.trunc();
    GroupLikeReport rep;

    std::vector<std::uint8_t> digits;
    std::vector<double> rhs;
    for (int m = 2; m <= N; ++m) {
        const std::size_t sz = g.level_size(m);
        // digits of every level-m word, reused across (n,k) splits
        digits.assign(sz * static_cast<std::size_t>(m), 0);
        for (std::size_t w = 0; w < sz; ++w) {
            std::size_t rest = w;
            for (int j = m - 1; j >= 0; --j) {
                digits[w * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] =
                    static_cast<std::uint8_t>(rest % static_cast<std::size_t>(d));
                rest /= static_cast<std::size_t>(d);
            }
        }
        auto gm = g.level(m);
        for (int n = 1; n <= m - 1; ++n) {
            const int k = m - n;
            rhs.assign(sz, 0.0);
            // rhs[(ua, ub)] = sum over position subsets S of g_m[w] where
            // w carries ua at S (in order) and ub at the complement.
            for_each_combination(m, n, [&](std::span<const int> s) {
                std::vector<bool> in_s(static_cast<std::size_t>(m), false);
                for (int p : s) in_s[static_cast<std::size_t>(p)] = true;
                for (std::size_t w = 0; w < sz; ++w) {
                    const std::uint8_t* dg = digits.data() + w * static_cast<std::size_t>(m);
                    std::size_t ia = 0, ib = 0;
                    for (int j = 0; j < m; ++j) {
                        if (in_s[static_cast<std::size_t>(j)])
                            ia = ia * static_cast<std::size_t>(d) + dg[j];
                        else
                            ib = ib * static_cast<std::size_t>(d) + dg[j];
                    }
                    rhs[ia * pow_size(d, k) + ib] += gm[w];
                }
            });
            auto gn = g.level(n);
            auto gk = g.level(k);
            const std::size_t szk = gk.size();
            for (std::size_t ia = 0; ia < gn.size(); ++ia) {
                for (std::size_t ib = 0; ib < szk; ++ib) {
                    double dev = std::fabs(gn[ia] * gk[ib] - rhs[ia * szk + ib]);
                    if (dev > rep.worst) {
                        rep.worst = dev;
                        rep.n = n;
                        rep.k = k;
                        rep.word = ia * szk + ib;
                    }
                }
            }
        }
    }
    rep.pass = rep.worst <= tol;
    return rep;
}

}  // namespace sigtail
