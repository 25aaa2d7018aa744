#include "pooltest/strategy_generic.hpp"

#include <algorithm>
#include <stdexcept>

#include "pooltest/hypergraph.hpp"
#include "pooltest/numeric.hpp"

namespace pooltest {

namespace {

// Pools selecting members whose rank (position in `members`) has bit b set,
// one pool per bit of the largest rank. Outcomes spell the defect's rank as
// long as `members` holds exactly one defect.
std::vector<Pool> rank_pools(const std::vector<std::uint32_t>& members) {
    const unsigned bits = ceil_log2(members.size());
    std::vector<Pool> pools(bits);
    for (unsigned b = 0; b < bits; ++b) {
        std::vector<std::uint32_t> sel;
        for (std::size_t rank = 0; rank < members.size(); ++rank)
            if ((rank >> b) & 1u) sel.push_back(members[rank]);
        pools[b].members = std::move(sel);
    }
    return pools;
}

std::size_t rank_from(const std::vector<bool>& outcomes, std::size_t base, unsigned bits) {
    std::size_t rank = 0;
    for (unsigned b = 0; b < bits; ++b)
        if (outcomes[base + b]) rank |= std::size_t{1} << b;
    return rank;
}

}  // namespace

GenericStrategy::GenericStrategy(BinaryCode code, std::uint32_t max_defects, GenericOptions opts)
    : code_(std::move(code)), max_defects_(max_defects), opts_(opts) {
    if (max_defects_ == 0) throw std::invalid_argument("max_defects must be positive");
    row_pools_.reserve(code_.rows());
    for (std::size_t i = 0; i < code_.rows(); ++i)
        row_pools_.push_back(Pool{code_.row_members(i)});
}

RunReport GenericStrategy::run(Oracle& oracle) const {
    RunReport rep;
    const std::size_t t = code_.cols();
    if (oracle.population() != t)
        throw std::invalid_argument("oracle population does not match the code size");

    const std::vector<bool> out1 = oracle.run_stage(row_pools_);
    rep.tests_per_stage.push_back(row_pools_.size());
    BitVec r(code_.rows());
    for (std::size_t i = 0; i < out1.size(); ++i)
        if (out1[i]) r.set(i);

    std::vector<std::uint32_t> answer;
    if (r.none()) {
        oracle.declare(answer);
        rep.total_tests = oracle.total_tests();
        rep.stages = oracle.stages_used();
        return rep;
    }

    const Hypergraph h = build_hypergraph(code_, r, max_defects_);
    if (h.edges.empty()) throw std::logic_error("nonzero outcome with no consistent defect set");
    const Coloring col = greedy_coloring(h);

    std::vector<std::vector<std::uint32_t>> classes(static_cast<std::size_t>(col.colors));
    for (std::uint32_t v = 0; v < t; ++v)
        if (col.color_of[v] != Coloring::uncolored)
            classes[static_cast<std::size_t>(col.color_of[v])].push_back(v);

    std::vector<std::size_t> class_ids;
    std::vector<Pool> stage2;
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (!classes[c].empty()) {
            class_ids.push_back(c);
            stage2.push_back(Pool{classes[c]});
        }
    const std::vector<bool> out2 = oracle.run_stage(stage2);
    rep.tests_per_stage.push_back(stage2.size());

    std::vector<std::size_t> positive;  // indices into class_ids/stage2
    for (std::size_t i = 0; i < out2.size(); ++i)
        if (out2[i]) positive.push_back(i);
    if (positive.empty()) throw std::logic_error("nonzero outcome but no positive color class");
    if (positive.size() > max_defects_)
        throw std::logic_error("more positive classes than the defect cap allows");

    if (opts_.identify_all_at_stage3) {
        // One batch: rank pools for every positive class side by side.
        std::vector<Pool> stage3;
        std::vector<std::pair<std::size_t, unsigned>> group;  // (pool base, bits) per class
        for (std::size_t i : positive) {
            const auto& members = classes[class_ids[i]];
            group.emplace_back(stage3.size(), ceil_log2(members.size()));
            auto pools = rank_pools(members);
            stage3.insert(stage3.end(), std::make_move_iterator(pools.begin()),
                          std::make_move_iterator(pools.end()));
        }
        std::vector<bool> out3;
        if (!stage3.empty()) {
            out3 = oracle.run_stage(stage3);
            rep.tests_per_stage.push_back(stage3.size());
        }
        for (std::size_t gi = 0; gi < positive.size(); ++gi) {
            const auto& members = classes[class_ids[positive[gi]]];
            answer.push_back(members[rank_from(out3, group[gi].first, group[gi].second)]);
        }
        std::sort(answer.begin(), answer.end());
        oracle.declare(answer);
        rep.answer = std::move(answer);
        rep.total_tests = oracle.total_tests();
        rep.stages = oracle.stages_used();
        return rep;
    }

    const auto& first_class = classes[class_ids[positive[0]]];
    std::uint32_t v;
    if (const unsigned bits = ceil_log2(first_class.size()); bits > 0) {
        const std::vector<bool> out3 = oracle.run_stage(rank_pools(first_class));
        rep.tests_per_stage.push_back(out3.size());
        v = first_class[rank_from(out3, 0, bits)];
    } else {
        v = first_class[0];  // single member, no tests needed
    }

    // Candidate edges: contain v and stay inside v plus the other positive
    // classes. The true defect set is always among them.
    std::vector<bool> allowed(t, false);
    allowed[v] = true;
    for (std::size_t gi = 1; gi < positive.size(); ++gi)
        for (std::uint32_t u : classes[class_ids[positive[gi]]]) allowed[u] = true;

    std::vector<const std::vector<std::uint32_t>*> candidates;
    for (const auto& e : h.edges) {
        if (!std::binary_search(e.begin(), e.end(), v)) continue;
        if (std::all_of(e.begin(), e.end(), [&](std::uint32_t u) { return allowed[u]; }))
            candidates.push_back(&e);
    }
    if (candidates.empty()) throw std::logic_error("no candidate edge contains the located defect");

    std::vector<Pool> stage4;
    stage4.reserve(candidates.size());
    for (const auto* e : candidates) {
        std::vector<std::uint32_t> complement;
        complement.reserve(t - e->size());
        for (std::uint32_t u = 0; u < t; ++u)
            if (!std::binary_search(e->begin(), e->end(), u)) complement.push_back(u);
        stage4.push_back(Pool{std::move(complement)});
    }
    const std::vector<bool> out4 = oracle.run_stage(stage4);
    rep.tests_per_stage.push_back(stage4.size());

    // A negative complement means every defect lies inside that candidate;
    // the intersection of such candidates is exactly the defect set.
    bool seeded = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (out4[i]) continue;
        if (!seeded) {
            answer = *candidates[i];
            seeded = true;
        } else {
            std::vector<std::uint32_t> merged;
            std::set_intersection(answer.begin(), answer.end(), candidates[i]->begin(),
                                  candidates[i]->end(), std::back_inserter(merged));
            answer = std::move(merged);
        }
    }
    if (!seeded) throw std::logic_error("every candidate complement tested positive");

    oracle.declare(answer);
    rep.answer = std::move(answer);
    rep.total_tests = oracle.total_tests();
    rep.stages = oracle.stages_used();
    return rep;
}

}  // namespace pooltest
