#include "pooltest/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace pooltest {

Pool Pool::of(std::vector<std::uint32_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return Pool{std::move(members)};
}

bool Pool::contains(std::uint32_t x) const {
    return std::binary_search(members.begin(), members.end(), x);
}

std::size_t total_tests(const Transcript& t) {
    std::size_t n = 0;
    for (const Stage& s : t.stages) n += s.pools.size();
    return n;
}

Oracle::Oracle(std::uint32_t population, std::vector<std::uint32_t> hidden,
               std::uint32_t max_defects)
    : population_(population), max_defects_(max_defects), hidden_(std::move(hidden)) {
    if (population_ == 0) throw std::invalid_argument("population must be positive");
    std::sort(hidden_.begin(), hidden_.end());
    if (std::adjacent_find(hidden_.begin(), hidden_.end()) != hidden_.end())
        throw std::invalid_argument("duplicate defect id");
    if (!hidden_.empty() && hidden_.back() >= population_)
        throw std::invalid_argument("defect id out of range");
    if (hidden_.size() > max_defects_)
        throw std::invalid_argument("more defects than the declared maximum");
}

std::vector<bool> Oracle::run_stage(const std::vector<Pool>& pools) {
    if (pools.empty())
        throw std::invalid_argument("empty batch: skip the stage instead of submitting nothing");
    for (const Pool& p : pools) {
        for (std::size_t i = 0; i < p.members.size(); ++i) {
            if (p.members[i] >= population_) throw std::invalid_argument("pool member out of range");
            if (i > 0 && p.members[i - 1] >= p.members[i])
                throw std::invalid_argument("pool members must be strictly ascending");
        }
    }
    std::vector<bool> outcomes(pools.size());
    for (std::size_t i = 0; i < pools.size(); ++i) {
        bool hit = false;
        for (std::uint32_t d : hidden_)
            if (pools[i].contains(d)) {
                hit = true;
                break;
            }
        outcomes[i] = hit;
    }
    transcript_.stages.push_back(Stage{pools, outcomes});
    return outcomes;
}

void Oracle::declare(std::vector<std::uint32_t> answer) {
    std::sort(answer.begin(), answer.end());
    transcript_.answer = std::move(answer);
    transcript_.answered = true;
}

}  // namespace pooltest
