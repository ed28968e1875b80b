#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sigtail/norms.hpp"

namespace sigtail {

/// Scale tiers: smoke for CI (< 10 s), desk for the full property suite,
/// deep for heavier statistics.
enum class Tier { Smoke, Desk, Deep };
const char* tier_name(Tier t);
Tier tier_from_name(const std::string& name);

struct RunConfig {
    int d = 2;
    double t = 1.0;
    int depth = 12;  // dyadic depth k
    int trunc = 14;  // truncation N
    int window_lo = -1, window_hi = -1;
    NormKind norm = NormKind::L1Proj;
    double p = 2.0;
    std::vector<double> lambdas{4.0, 8.0, 16.0};
    std::vector<double> mus{0.5, 1.0};
    long trials = 10000;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    double slack_lo = 0.4, slack_hi = 1.25;
    bool slack_overridden = false;
    int threads = 0;

    void validate() const;  // documented safe ranges
};

struct CheckRow {
    std::string name;
    std::string tag;  // property family the check verifies
    bool pass = false;
    double value = 0.0;      // measured statistic
    double threshold = 0.0;  // its limit
    std::string detail;
    double seconds = 0.0;
};

struct VerifyReport {
    std::vector<CheckRow> rows;
    bool all_pass = false;
    double wall_seconds = 0.0;
    std::string started, finished;  // ISO-8601 UTC

    const CheckRow* find(const std::string& name) const;
};

/// Runs every check registered for the tier, writing experiment CSVs,
/// manifest.json and run.log under config.out_dir.
VerifyReport run_verify(const RunConfig& config, Tier tier);

/// Property tags every desk run must cover; the coverage assertion is
/// itself a check row.
std::span<const char* const> required_tags();

/// Per-experiment stream namespace: trial streams are
/// derive(seed, {fnv1a(experiment), trial}).
std::uint64_t experiment_tag(const std::string& name);

}  // namespace sigtail
