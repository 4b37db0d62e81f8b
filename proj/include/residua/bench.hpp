#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "residua/monitor.hpp"

namespace residua {

/// Controlled-random user population for the transaction benchmark.
struct BenchScenario {
    std::size_t users = 1000;
    std::array<double, 3> mix = {1.0 / 3, 1.0 / 3, 1.0 / 3}; // bronze/silver/gold
    std::uint64_t seed = 42;
    std::size_t steps = 50; // events per user
    int max_level = 2;      // run levels none..max_level

    void validate() const;
};

/// Per-level counters plus reduction ratios against the unanalysed run.
struct BenchReport {
    struct Level {
        std::string label; // "none", "0", "1", "2"
        ActivationStats stats;
        std::int64_t bronze_delivered = 0;
        bool verdicts_agree_with_none = true;
    };
    std::vector<Level> levels;

    double delivered_ratio(std::size_t level_index) const;
    double evaluated_ratio(std::size_t level_index) const;
};

/// Generates per-user random walks over the per-type transaction CFGs,
/// then monitors them with the payment property at each cumulative
/// analysis level. Analyses run once up front; the walks and therefore
/// the report are deterministic in the seed.
BenchReport run_bench(const BenchScenario& s);

/// Byte-stable rendering for regression diffs.
std::string print_bench(const BenchScenario& s, const BenchReport& r);

} // namespace residua
