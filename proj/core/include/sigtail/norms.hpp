#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace sigtail {

/// Tensor-level norms and bounds.
///
/// L1Proj is the projective norm for the l1 base norm (exactly the
/// coordinate l1 norm) and is a cross-norm. L2Coord is the coordinate
/// Euclidean norm. For the l2-base projective norm, which has no cheap
/// exact formula, the library exposes a bounding pair instead:
/// SampledDualLower (a randomized lower bound through rank-one dual
/// functionals) and L1CoordsUpper (the coordinate l1 norm, an upper
/// bound). SampledDualLower is a bound, not a norm.
enum class NormKind {
    L1Proj,
    L2Coord,
    L1CoordsUpper,
    SampledDualLower,
};

const char* norm_kind_name(NormKind k);
NormKind norm_kind_from_name(const std::string& name);

struct NormSpec {
    NormKind kind = NormKind::L1Proj;
    int samples = 10000;               // SampledDualLower only
    std::uint64_t seed = 0x7a11ed5eedULL;  // SampledDualLower only
};

double level_norm(std::span<const double> level, int d, int n, const NormSpec& spec = {});

/// log of level_norm; -inf for the zero array.
double log_level_norm(std::span<const double> level, int d, int n, const NormSpec& spec = {});

}  // namespace sigtail
