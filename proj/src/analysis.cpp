#include "pooltest/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pooltest/numeric.hpp"

namespace pooltest {

double entropy(double x) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("entropy needs 0 < x < 1");
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

BoundReport reference_bounds(std::uint64_t t, std::uint32_t s) {
    if (t < 2) throw std::invalid_argument("population must be at least 2");
    if (s < 1) throw std::invalid_argument("defect cap must be at least 1");
    const double log2t = std::log2(static_cast<double>(t));
    const double e = std::numbers::e;
    BoundReport b;
    b.t = t;
    b.s = s;
    b.info_bound = s * log2t;
    b.dr82_nonadaptive = double(s) * s / (2.0 * std::log2(e * (s + 1) / 2.0)) * log2t;
    b.two_stage = s * e / std::log2(e) * log2t;
    if (s == 2) b.damaschke25 = 2.5 * log2t;
    return b;
}

DefectSets::DefectSets(std::uint32_t t, std::uint32_t s, std::uint64_t limit) {
    if (t == 0) throw std::invalid_argument("population must be positive");
    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i <= s; ++i) {
        total += binomial_capped(t, i, limit + 1);
        if (total > limit)
            throw std::invalid_argument("defect-set enumeration exceeds " + std::to_string(limit) +
                                        " sets; reduce t or s");
    }
    offsets_.reserve(total + 1);
    offsets_.push_back(0);
    offsets_.push_back(0);  // the empty set
    for (std::uint32_t size = 1; size <= std::min(s, t); ++size) {
        std::vector<std::uint32_t> set(size);
        for (std::uint32_t i = 0; i < size; ++i) set[i] = i;
        while (true) {
            flat_.insert(flat_.end(), set.begin(), set.end());
            offsets_.push_back(flat_.size());
            std::uint32_t i = size;
            bool done = true;
            while (i-- > 0) {
                if (set[i] != i + t - size) {
                    ++set[i];
                    for (std::uint32_t j = i + 1; j < size; ++j) set[j] = set[j - 1] + 1;
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
    }
}

namespace detail {

void merge(VerifyPartial& a, const VerifyPartial& b) {
    a.all_correct = a.all_correct && b.all_correct;
    if (b.first_failure && (!a.first_failure || *b.first_failure < *a.first_failure))
        a.first_failure = b.first_failure;
    if (b.has_worst && (!a.has_worst || b.worst_total > a.worst_total ||
                        (b.worst_total == a.worst_total && b.worst_set < a.worst_set))) {
        a.worst_total = b.worst_total;
        a.worst_set = b.worst_set;
        a.has_worst = true;
    }
    a.max_stages = std::max(a.max_stages, b.max_stages);
    for (const auto& [total, count] : b.histogram) a.histogram[total] += count;
}

VerifySummary finish(std::vector<VerifyPartial>& partials, std::uint64_t runs) {
    VerifyPartial acc;
    for (const VerifyPartial& p : partials) merge(acc, p);
    VerifySummary s;
    s.runs = runs;
    s.all_correct = acc.all_correct;
    s.first_failure = std::move(acc.first_failure);
    s.worst_total = acc.worst_total;
    s.worst_case_set = std::move(acc.worst_set);
    s.max_stages = acc.max_stages;
    s.histogram = std::move(acc.histogram);
    return s;
}

}  // namespace detail

}  // namespace pooltest
