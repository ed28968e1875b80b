#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace sigtail {

/// Dense element of the truncated tensor algebra over R^d: one
/// coefficient array per level n = 0..N, level n holding d^n reals
/// indexed by words (i_1,...,i_n) over {1,...,d} in lexicographic order
/// (first letter most significant). Level 0 is a single scalar.
class TruncatedTensorSeries {
public:
    TruncatedTensorSeries() = default;
    TruncatedTensorSeries(int dim, int trunc);

    static TruncatedTensorSeries unit(int dim, int trunc);

    int dim() const { return dim_; }
    int trunc() const { return trunc_; }

    std::span<double> level(int n) { return levels_[static_cast<std::size_t>(n)]; }
    std::span<const double> level(int n) const { return levels_[static_cast<std::size_t>(n)]; }
    std::size_t level_size(int n) const { return levels_[static_cast<std::size_t>(n)].size(); }

    double& scalar() { return levels_[0][0]; }
    double scalar() const { return levels_[0][0]; }

    /// Coefficient of a word given with letters in 1..d.
    double coeff(std::span<const int> word) const;
    double& coeff(std::span<const int> word);
    double coeff(std::initializer_list<int> word) const;

    bool all_finite() const;
    double max_abs() const;

    TruncatedTensorSeries& operator+=(const TruncatedTensorSeries& o);
    TruncatedTensorSeries& operator*=(double c);
    /// this += c * o, level-wise.
    void axpy(double c, const TruncatedTensorSeries& o);

private:
    int dim_ = 0;
    int trunc_ = -1;
    std::vector<std::vector<double>> levels_;
};

/// Index of a word (letters 1..d) in the lexicographic layout of level n.
std::size_t word_index(int d, std::span<const int> word);
/// Inverse of word_index; returns letters in 1..d.
std::vector<int> word_from_index(int d, int n, std::size_t index);

std::size_t pow_size(int d, int n);

/// Truncated tensor (concatenation) product: level n of the result is
/// sum_{k=0}^{n} a_k (x) b_{n-k}; levels beyond the truncation are
/// dropped. Dimensions and truncations must match.
TruncatedTensorSeries truncated_product(const TruncatedTensorSeries& a,
                                        const TruncatedTensorSeries& b);

/// Signature of the straight segment with increment v: level n is
/// v^{(x)n} / n!.
TruncatedTensorSeries segment_exp(std::span<const double> v, int trunc);

/// In-place x <- x (x) segment_exp(v). This is the hot operation when
/// folding a piecewise-linear path chord by chord; it exploits the
/// rank-one structure of the segment so the cost per output level l is
/// O(d^l) instead of the general O(l d^l).
///
/// Uses the layered recursion A^(r)_l = x_l / r! + A^(r+1)_{l-1} (x) v,
/// whose r = 0 layer is exactly the concatenation product.
void concat_segment_exp(TruncatedTensorSeries& x, std::span<const double> v);

double max_abs_diff(const TruncatedTensorSeries& a, const TruncatedTensorSeries& b);

}  // namespace sigtail
