#pragma once

#include <cstdint>

#include "pooltest/codes.hpp"
#include "pooltest/oracle.hpp"
#include "pooltest/report.hpp"

namespace pooltest {

struct GenericOptions {
    // When set, stage 3 resolves every positive class at once (one batch of
    // rank pools per class) and stage 4 is skipped: 3 stages, more tests.
    bool identify_all_at_stage3 = false;
};

// Works with any binary code. Stages:
//   1. submit the code rows, observe the outcome vector r;
//   2. greedily color the consistency hypergraph of r, pool each nonempty
//      color class: every positive class holds exactly one defect;
//   3. binary rank pools inside the lowest positive class locate one defect v
//      (or inside every positive class under identify_all_at_stage3);
//   4. for each candidate edge e containing v and lying inside the positive
//      classes, test the complement of e; the answer is the intersection of
//      the candidates whose complement tested negative.
// Identification is exact for every defect set of size <= max_defects.
class GenericStrategy {
public:
    GenericStrategy(BinaryCode code, std::uint32_t max_defects, GenericOptions opts = {});

    const BinaryCode& code() const { return code_; }
    std::uint32_t max_defects() const { return max_defects_; }

    // Thread-safe: per-run state is local, shared members are read-only.
    RunReport run(Oracle& oracle) const;

private:
    BinaryCode code_;
    std::uint32_t max_defects_;
    GenericOptions opts_;
    std::vector<Pool> row_pools_;
};

}  // namespace pooltest
