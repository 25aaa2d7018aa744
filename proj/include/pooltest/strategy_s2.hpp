#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "pooltest/codes.hpp"
#include "pooltest/oracle.hpp"
#include "pooltest/report.hpp"

namespace pooltest {

// Parameters of the two-defect concatenated construction: an outer q-ary
// code of length n_hat (first t words in lexicographic order) composed with
// the constant-weight inner code of length n_prime and weight inner_weight.
struct S2Params {
    std::uint32_t q = 0;
    std::uint32_t n_hat = 0;
    std::uint32_t n_prime = 0;
    std::uint32_t inner_weight = 0;
    std::uint64_t t = 0;

    // Throws std::invalid_argument when any invariant fails:
    // 2 <= q <= C(n_prime, inner_weight), 0 < inner_weight < n_prime,
    // n_hat >= 1, 1 <= t <= q^n_hat.
    void validate() const;
};

// Deterministic worst-case total over all four stages:
//   n_hat*n_prime + q + max over admissible layer-weight profiles of
//   ceil(log2 prod C(u_j, k)) + ceil(log2 prod C(k, 2k - u_j)),
// where k = inner_weight and each layer weight u_j ranges over
// [k, min(2k, n_prime)]. The maximum is exact: dominated layer choices are
// discarded and the rest enumerated as multisets with exact products.
std::uint64_t worst_case_bound(const S2Params& p);

struct SelectOptions {
    std::uint32_t n_prime_max = 24;
    std::optional<std::uint32_t> n_prime;
    std::optional<std::uint32_t> inner_weight;
    std::optional<std::uint32_t> q;
};

// Exhaustive search minimizing worst_case_bound over n_prime, inner_weight
// and q (n_hat forced by q^n_hat >= t). Ties prefer smaller n_prime, then
// smaller q. Options pin individual parameters for restricted searches.
S2Params select_params(std::uint64_t t, const SelectOptions& opts = {});

// Members of `candidates` that can be the second defect once v is known:
// column covered by the outcome and completing it exactly.
std::vector<std::uint32_t> consistent_partners(const BinaryCode& code, const BitVec& outcome,
                                               std::uint32_t v,
                                               const std::vector<std::uint32_t>& candidates);

// Four-stage strategy for up to two defects.
//   1. submit the concatenated code, read per-layer weights of r:
//      all-zero r answers empty; all layers at the inner weight answer the
//      unique column decoding r layer by layer;
//   2. otherwise pick the first layer of weight above the inner weight and
//      pool samples by their outer symbol there (q pools, exactly two
//      positive);
//   3. rank pools over consistent members of the lower positive class find
//      the first defect;
//   4. rank pools over its consistent partners in the other class find the
//      second (zero tests when a single partner remains).
class S2Strategy {
public:
    explicit S2Strategy(S2Params p);

    const S2Params& params() const { return params_; }
    const BinaryCode& code() const { return code_; }

    // Thread-safe: per-run state is local, shared members are read-only.
    RunReport run(Oracle& oracle) const;

private:
    S2Params params_;
    ConstantWeightCode inner_;
    QaryCode outer_;
    BinaryCode code_;
    std::vector<Pool> row_pools_;
    std::unordered_map<std::uint64_t, std::uint32_t> inner_index_;  // word bits -> symbol
};

}  // namespace pooltest
