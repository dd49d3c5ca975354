#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace eps {

struct SelftestOutcome {
    bool passed = false;
    std::string detail;
};

struct SelftestItem {
    std::string name;
    /// Where the expected values come from: "published" for values printed
    /// in the EIA2 worked example or a cited standard, "regression" for
    /// values frozen from an independent oracle, "property" for sampled
    /// invariants.
    std::string source;
    std::function<SelftestOutcome()> run;
};

enum class SelftestScale { quick, full };

/// Sample counts used by the property items.
struct SelftestSizes {
    std::size_t involution_trials;
    std::size_t linearity_trials;
    std::size_t avalanche_trials;
    std::size_t null_trials;
};
SelftestSizes selftest_sizes(SelftestScale scale);

std::vector<SelftestItem> selftest_items(SelftestScale scale);

/// The control-plane link script used for the tamper/replay check: 100 sends,
/// 64 single-bit body tampers and 10 replays, with expected verdicts.
std::string tamper_replay_suite_script();

} // namespace eps
