#pragma once

#include <cstdint>
#include <vector>

namespace pooltest {

// One pool of samples to test together. Members are 0-based sample ids,
// strictly ascending. An empty pool is allowed and always tests negative.
struct Pool {
    std::vector<std::uint32_t> members;

    static Pool of(std::vector<std::uint32_t> members);
    bool contains(std::uint32_t x) const;
};

struct Stage {
    std::vector<Pool> pools;
    std::vector<bool> outcomes;
};

// Record of one full run: the pools of every submitted stage, their
// outcomes, and the declared answer.
struct Transcript {
    std::vector<Stage> stages;
    std::vector<std::uint32_t> answer;
    bool answered = false;
};

std::size_t total_tests(const Transcript& t);

// Answers batches of pools against a hidden defect set. A pool tests
// positive iff it intersects the hidden set. Stages are strictly
// sequential: a batch must be submitted in full before its outcomes exist.
class Oracle {
public:
    // hidden holds 0-based sample ids, distinct, each < population,
    // |hidden| <= max_defects.
    Oracle(std::uint32_t population, std::vector<std::uint32_t> hidden, std::uint32_t max_defects);

    std::uint32_t population() const { return population_; }
    std::uint32_t max_defects() const { return max_defects_; }

    // Empty batches are rejected; a skipped stage is simply not submitted.
    std::vector<bool> run_stage(const std::vector<Pool>& pools);

    void declare(std::vector<std::uint32_t> answer);

    const Transcript& transcript() const { return transcript_; }
    std::size_t total_tests() const { return pooltest::total_tests(transcript_); }
    std::size_t stages_used() const { return transcript_.stages.size(); }

private:
    std::uint32_t population_;
    std::uint32_t max_defects_;
    std::vector<std::uint32_t> hidden_;
    Transcript transcript_;
};

}  // namespace pooltest
