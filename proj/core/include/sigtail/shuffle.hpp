#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sigtail/tensor_series.hpp"

namespace sigtail {

/// Permutation of {1,...,n}; image[k] is sigma(k+1).
struct Permutation {
    std::vector<int> image;

    int arity() const { return static_cast<int>(image.size()); }
    static Permutation identity(int n);
    static Permutation reversal(int n);
    Permutation inverse() const;
    bool is_bijection() const;
};

/// The operator induced by v_1 (x) ... (x) v_n -> v_sigma(1) (x) ... (x) v_sigma(n)
/// on a dense level-n coefficient array.
std::vector<double> apply_permutation(const Permutation& sigma, std::span<const double> level, int d);

/// All (n,k)-shuffles: permutations of {1,...,n+k} increasing on the
/// first n and on the last k positions. |result| = binomial(n+k, n).
std::vector<Permutation> enumerate_shuffles(int n, int k);

/// Shuffle product of a level-n and a level-k coefficient array over the
/// same alphabet: coefficient of a word w of length n+k is the sum over
/// n-subsets S of positions of a[w|_S] * b[w|_Sc].
std::vector<double> shuffle_product(std::span<const double> a, int n,
                                    std::span<const double> b, int k, int d);

struct GroupLikeReport {
    bool pass = true;
    double worst = 0.0;  // max |g_n (x) g_k - sum_sigma P^sigma(g_{n+k})|
    int n = 0, k = 0;
    std::size_t word = 0;  // index of the worst word at level n+k
};

/// Checks the shuffle characterization of group-like elements at all
/// level pairs n + k <= trunc: g_n (x) g_k = sum over (n,k)-shuffles of
/// P^sigma(g_{n+k}). Requires scalar level 1.
GroupLikeReport is_group_like(const TruncatedTensorSeries& g, double tol);

}  // namespace sigtail
