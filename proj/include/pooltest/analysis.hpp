#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pooltest/oracle.hpp"
#include "pooltest/report.hpp"

namespace pooltest {

// Binary entropy in bits. Domain (0, 1).
double entropy(double x);

// Reference test counts for identifying up to s defects among t samples.
// Main terms only; lower-order corrections are not modeled.
struct BoundReport {
    std::uint64_t t = 0;
    std::uint32_t s = 0;
    double info_bound = 0;         // s * log2(t)
    double dr82_nonadaptive = 0;   // s^2 / (2 log2(e(s+1)/2)) * log2(t)
    double two_stage = 0;          // s e / log2(e) * log2(t); asymptotic in s
    std::optional<double> damaschke25;  // 2.5 log2(t), defined for s = 2 only
};

BoundReport reference_bounds(std::uint64_t t, std::uint32_t s);

// All defect sets of size 0..s over t samples, size-major then
// lexicographic, stored flat. Refuses counts above `limit`.
class DefectSets {
public:
    DefectSets(std::uint32_t t, std::uint32_t s, std::uint64_t limit = 1'000'000);

    std::uint64_t count() const { return offsets_.size() - 1; }
    std::vector<std::uint32_t> get(std::uint64_t i) const {
        return {flat_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                flat_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1])};
    }

private:
    std::vector<std::uint32_t> flat_;
    std::vector<std::uint64_t> offsets_;
};

struct VerifySummary {
    std::uint64_t runs = 0;
    bool all_correct = true;
    std::optional<std::vector<std::uint32_t>> first_failure;  // lex smallest failing set
    std::size_t worst_total = 0;
    std::vector<std::uint32_t> worst_case_set;  // lex smallest among ties
    std::size_t max_stages = 0;
    std::map<std::size_t, std::uint64_t> histogram;  // exact total -> run count
};

namespace detail {

struct VerifyPartial {
    bool all_correct = true;
    std::optional<std::vector<std::uint32_t>> first_failure;
    std::size_t worst_total = 0;
    std::vector<std::uint32_t> worst_set;
    bool has_worst = false;
    std::size_t max_stages = 0;
    std::map<std::size_t, std::uint64_t> histogram;
};

// Folds b into a. Ties on worst_total keep the lexicographically smaller
// set, so the merged result is independent of chunking and thread count.
void merge(VerifyPartial& a, const VerifyPartial& b);

VerifySummary finish(std::vector<VerifyPartial>& partials, std::uint64_t runs);

}  // namespace detail

// Runs the strategy against every defect set of size <= s, each with a fresh
// oracle, and checks the declared answer against the hidden set. The
// parallel path chunks the enumeration and merges per-chunk partials in
// chunk order; results are identical to the serial path.
template <class Strategy>
VerifySummary verify_exhaustive(const Strategy& strategy, std::uint32_t t, std::uint32_t s,
                                bool parallel = true) {
    const DefectSets sets(t, s);
    const std::uint64_t n = sets.count();
    const std::uint64_t chunk = 512;
    const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<detail::VerifyPartial> partials(n_chunks);

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
        detail::VerifyPartial& p = partials[static_cast<std::size_t>(c)];
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
        const std::uint64_t hi = std::min(n, lo + chunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            std::vector<std::uint32_t> hidden = sets.get(i);
            Oracle oracle(t, hidden, s);
            const RunReport rep = strategy.run(oracle);
            if (rep.answer != hidden) {
                p.all_correct = false;
                if (!p.first_failure || hidden < *p.first_failure) p.first_failure = hidden;
            }
            const std::size_t total = rep.total_tests;
            if (!p.has_worst || total > p.worst_total ||
                (total == p.worst_total && hidden < p.worst_set)) {
                p.worst_total = total;
                p.worst_set = std::move(hidden);
                p.has_worst = true;
            }
            p.max_stages = std::max(p.max_stages, rep.stages);
            ++p.histogram[total];
        }
    }
    return detail::finish(partials, n);
}

}  // namespace pooltest
