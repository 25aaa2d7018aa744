#pragma once

#include <cstdint>
#include <vector>

namespace pooltest {

// Summary of one strategy run against one oracle.
struct RunReport {
    std::vector<std::uint32_t> answer;         // ascending
    std::vector<std::size_t> tests_per_stage;  // one entry per submitted stage
    std::size_t total_tests = 0;
    std::size_t stages = 0;
    // Stage-1 per-layer outcome weights; empty for strategies without layers.
    std::vector<std::uint32_t> layer_weights;
};

}  // namespace pooltest
