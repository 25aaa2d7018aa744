#include "pooltest/strategy_s2.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "pooltest/numeric.hpp"

namespace pooltest {

namespace {

using boost::multiprecision::cpp_int;

unsigned ceil_log2_big(const cpp_int& x) {
    if (x <= 1) return 0;
    const cpp_int v = x - 1;
    return static_cast<unsigned>(boost::multiprecision::msb(v)) + 1;
}

// Smallest m >= 1 with q^m >= t.
std::uint32_t outer_length_for(std::uint32_t q, std::uint64_t t) {
    std::uint32_t m = 1;
    unsigned __int128 p = q;
    while (p < t) {
        p *= q;
        ++m;
    }
    return m;
}

struct LayerChoice {
    std::uint64_t a;  // search-space factor for locating the first defect
    std::uint64_t b;  // partner-count factor for the second
};

// Per-layer (a, b) pairs over admissible layer weights u in
// [k, min(2k, n_prime)], reduced to the Pareto frontier: a choice dominated
// in both components can never attain the profile maximum.
std::vector<LayerChoice> pareto_choices(std::uint32_t n_prime, std::uint32_t k) {
    std::vector<LayerChoice> all;
    for (std::uint32_t u = k; u <= std::min(2 * k, n_prime); ++u)
        all.push_back({binomial(u, k), binomial(k, 2 * k - u)});
    std::sort(all.begin(), all.end(), [](const LayerChoice& x, const LayerChoice& y) {
        return x.a != y.a ? x.a > y.a : x.b > y.b;
    });
    std::vector<LayerChoice> keep;
    std::uint64_t best_b = 0;
    for (const LayerChoice& c : all)
        if (c.b > best_b || keep.empty()) {
            keep.push_back(c);
            best_b = c.b;
        }
    return keep;
}

void max_over_multisets(const std::vector<LayerChoice>& choices, std::size_t ci,
                        std::uint32_t layers_left, cpp_int a_prod, cpp_int b_prod,
                        unsigned& best) {
    if (layers_left == 0 || ci + 1 == choices.size()) {
        for (std::uint32_t i = 0; i < layers_left; ++i) {
            a_prod *= choices[ci].a;
            b_prod *= choices[ci].b;
        }
        best = std::max(best, ceil_log2_big(a_prod) + ceil_log2_big(b_prod));
        return;
    }
    for (std::uint32_t take = 0; take <= layers_left; ++take) {
        max_over_multisets(choices, ci + 1, layers_left - take, a_prod, b_prod, best);
        a_prod *= choices[ci].a;
        b_prod *= choices[ci].b;
    }
}

// Exact maximum over layer-weight profiles of
// ceil(log2 prod a_j) + ceil(log2 prod b_j). Profiles are multisets because
// every layer offers the same choices; the two ceilings couple the layers,
// so the products are tracked exactly rather than maximized layer by layer.
unsigned stage34_worst(std::uint32_t n_prime, std::uint32_t k, std::uint32_t n_hat) {
    const auto choices = pareto_choices(n_prime, k);
    unsigned best = 0;
    max_over_multisets(choices, 0, n_hat, 1, 1, best);
    return best;
}

}  // namespace

void S2Params::validate() const {
    if (n_prime < 2) throw std::invalid_argument("inner length must be at least 2");
    if (inner_weight == 0 || inner_weight >= n_prime)
        throw std::invalid_argument("inner weight must satisfy 0 < weight < length");
    if (q < 2) throw std::invalid_argument("outer alphabet needs at least two symbols");
    if (binomial_capped(n_prime, inner_weight, std::uint64_t{1} << 62) < q)
        throw std::invalid_argument("alphabet larger than the inner code");
    if (n_hat == 0) throw std::invalid_argument("outer length must be positive");
    if (t == 0) throw std::invalid_argument("population must be positive");
    unsigned __int128 cap = 1;
    for (std::uint32_t i = 0; i < n_hat && cap < t; ++i) cap *= q;
    if (cap < t) throw std::invalid_argument("population exceeds q^n_hat");
}

std::uint64_t worst_case_bound(const S2Params& p) {
    p.validate();
    return std::uint64_t{p.n_hat} * p.n_prime + p.q + stage34_worst(p.n_prime, p.inner_weight, p.n_hat);
}

S2Params select_params(std::uint64_t t, const SelectOptions& opts) {
    if (t == 0) throw std::invalid_argument("population must be positive");

    std::optional<S2Params> best;
    std::uint64_t best_bound = 0;
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, unsigned> memo;

    const std::uint32_t np_lo = opts.n_prime.value_or(2);
    const std::uint32_t np_hi = opts.n_prime.value_or(opts.n_prime_max);
    for (std::uint32_t n_prime = np_lo; n_prime <= np_hi; ++n_prime) {
        // bound >= n_hat*n_prime + q >= n_prime + 2; ties prefer smaller n_prime.
        if (best && std::uint64_t{n_prime} + 2 > best_bound) break;
        const std::uint32_t k_lo = opts.inner_weight.value_or(1);
        const std::uint32_t k_hi = opts.inner_weight.value_or(n_prime - 1);
        for (std::uint32_t k = k_lo; k <= k_hi && k < n_prime; ++k) {
            const std::uint64_t q_cap = binomial_capped(n_prime, k, std::uint64_t{1} << 32);
            std::uint64_t q_lo = opts.q.value_or(2);
            std::uint64_t q_hi = opts.q ? std::uint64_t{*opts.q} : q_cap;
            for (std::uint64_t q = q_lo; q <= q_hi && q <= q_cap; ++q) {
                if (best && q + n_prime > best_bound) break;
                const std::uint32_t n_hat = outer_length_for(static_cast<std::uint32_t>(q), t);
                const std::uint64_t lb = std::uint64_t{n_hat} * n_prime + q;
                if (best && lb > best_bound) continue;
                auto key = std::make_tuple(n_prime, k, n_hat);
                auto it = memo.find(key);
                if (it == memo.end())
                    it = memo.emplace(key, stage34_worst(n_prime, k, n_hat)).first;
                const std::uint64_t bound = lb + it->second;
                const bool wins =
                    !best || bound < best_bound ||
                    (bound == best_bound &&
                     (n_prime < best->n_prime || (n_prime == best->n_prime && q < best->q)));
                if (wins) {
                    best = S2Params{static_cast<std::uint32_t>(q), n_hat, n_prime, k, t};
                    best_bound = bound;
                }
            }
        }
    }
    if (!best) throw std::invalid_argument("no parameters satisfy the requested restrictions");
    return *best;
}

std::vector<std::uint32_t> consistent_partners(const BinaryCode& code, const BitVec& outcome,
                                               std::uint32_t v,
                                               const std::vector<std::uint32_t>& candidates) {
    const BitVec& cv = code.column(v);
    std::vector<std::uint32_t> out;
    for (std::uint32_t u : candidates) {
        if (u == v) continue;
        const BitVec& cu = code.column(u);
        if (cu.is_subset_of(outcome) && (cv | cu) == outcome) out.push_back(u);
    }
    return out;
}

S2Strategy::S2Strategy(S2Params p)
    : params_((p.validate(), p)),
      inner_(ConstantWeightCode::all_words(p.n_prime, p.inner_weight)),
      outer_(QaryCode::lex_prefix(p.q, p.n_hat, p.t)),
      code_(concatenate(outer_, inner_)) {
    row_pools_.reserve(code_.rows());
    for (std::size_t i = 0; i < code_.rows(); ++i)
        row_pools_.push_back(Pool{code_.row_members(i)});
    for (std::uint32_t a = 0; a < params_.q; ++a)
        inner_index_.emplace(inner_.word(a).extract(0, params_.n_prime), a);
}

RunReport S2Strategy::run(Oracle& oracle) const {
    RunReport rep;
    const std::uint64_t t = params_.t;
    const std::uint32_t k = params_.inner_weight;
    if (oracle.population() != t)
        throw std::invalid_argument("oracle population does not match the code size");

    const std::vector<bool> out1 = oracle.run_stage(row_pools_);
    rep.tests_per_stage.push_back(row_pools_.size());
    BitVec r(code_.rows());
    for (std::size_t i = 0; i < out1.size(); ++i)
        if (out1[i]) r.set(i);
    rep.layer_weights = layer_weights(r, params_.n_prime);

    auto finish = [&](std::vector<std::uint32_t> answer) {
        std::sort(answer.begin(), answer.end());
        oracle.declare(answer);
        rep.answer = std::move(answer);
        rep.total_tests = oracle.total_tests();
        rep.stages = oracle.stages_used();
        return rep;
    };

    if (r.none()) return finish({});

    if (std::all_of(rep.layer_weights.begin(), rep.layer_weights.end(),
                    [&](std::uint32_t w) { return w == k; })) {
        // Single defect: each layer is one inner word; decode symbols and
        // look the outer word up by its lexicographic index.
        std::uint64_t index = 0;
        for (std::uint32_t layer = 0; layer < params_.n_hat; ++layer) {
            const auto it = inner_index_.find(r.extract(std::size_t{layer} * params_.n_prime,
                                                        params_.n_prime));
            if (it == inner_index_.end())
                throw std::logic_error("layer at inner weight does not match any inner word");
            index = index * params_.q + it->second;
        }
        if (index >= t) throw std::logic_error("decoded column index beyond the population");
        return finish({static_cast<std::uint32_t>(index)});
    }

    // Two defects. Split on the first layer where their inner words differ.
    std::uint32_t split = 0;
    while (rep.layer_weights[split] == k) ++split;

    std::vector<std::vector<std::uint32_t>> classes(params_.q);
    for (std::uint32_t j = 0; j < t; ++j) classes[outer_.symbol(j, split)].push_back(j);
    std::vector<Pool> stage2;
    stage2.reserve(params_.q);
    for (std::uint32_t a = 0; a < params_.q; ++a) stage2.push_back(Pool{classes[a]});
    const std::vector<bool> out2 = oracle.run_stage(stage2);
    rep.tests_per_stage.push_back(stage2.size());

    std::vector<std::uint32_t> pos;
    for (std::uint32_t a = 0; a < params_.q; ++a)
        if (out2[a]) pos.push_back(a);
    if (pos.size() != 2)
        throw std::logic_error("split layer above inner weight must yield two positive symbols");

    std::vector<std::uint32_t> first;
    for (std::uint32_t j : classes[pos[0]])
        if (code_.column(j).is_subset_of(r)) first.push_back(j);
    if (first.empty()) throw std::logic_error("positive symbol class with no consistent member");

    std::uint32_t v = first[0];
    if (const unsigned bits = ceil_log2(first.size()); bits > 0) {
        std::vector<Pool> stage3(bits);
        for (unsigned b = 0; b < bits; ++b) {
            std::vector<std::uint32_t> sel;
            for (std::size_t rank = 0; rank < first.size(); ++rank)
                if ((rank >> b) & 1u) sel.push_back(first[rank]);
            stage3[b].members = std::move(sel);
        }
        const std::vector<bool> out3 = oracle.run_stage(stage3);
        rep.tests_per_stage.push_back(stage3.size());
        std::size_t rank = 0;
        for (unsigned b = 0; b < bits; ++b)
            if (out3[b]) rank |= std::size_t{1} << b;
        v = first[rank];
    }

    const std::vector<std::uint32_t> partners =
        consistent_partners(code_, r, v, classes[pos[1]]);
    if (partners.empty()) throw std::logic_error("no consistent partner for the located defect");

    std::uint32_t u = partners[0];
    if (const unsigned bits = ceil_log2(partners.size()); bits > 0) {
        std::vector<Pool> stage4(bits);
        for (unsigned b = 0; b < bits; ++b) {
            std::vector<std::uint32_t> sel;
            for (std::size_t rank = 0; rank < partners.size(); ++rank)
                if ((rank >> b) & 1u) sel.push_back(partners[rank]);
            stage4[b].members = std::move(sel);
        }
        const std::vector<bool> out4 = oracle.run_stage(stage4);
        rep.tests_per_stage.push_back(stage4.size());
        std::size_t rank = 0;
        for (unsigned b = 0; b < bits; ++b)
            if (out4[b]) rank |= std::size_t{1} << b;
        u = partners[rank];
    }

    return finish({v, u});
}

}  // namespace pooltest
