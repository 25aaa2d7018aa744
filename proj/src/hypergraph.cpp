#include "pooltest/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace pooltest {

namespace {

struct EnumContext {
    const BinaryCode* code;
    const BitVec* target;
    std::uint32_t max_size;
    std::vector<std::uint32_t> pool;   // vertices whose column is covered by target
    std::vector<BitVec> suffix_or;     // suffix_or[i] = OR of pool[i..] columns
};

EnumContext make_context(const BinaryCode& code, const BitVec& outcome, std::uint32_t max_defects) {
    EnumContext ctx{&code, &outcome, max_defects, {}, {}};
    for (std::size_t j = 0; j < code.cols(); ++j)
        if (code.column(j).is_subset_of(outcome)) ctx.pool.push_back(static_cast<std::uint32_t>(j));
    ctx.suffix_or.assign(ctx.pool.size() + 1, BitVec(outcome.size()));
    for (std::size_t i = ctx.pool.size(); i-- > 0;)
        ctx.suffix_or[i] = ctx.suffix_or[i + 1] | code.column(ctx.pool[i]);
    return ctx;
}

// Pre-order emission over ascending extensions yields sequence-lexicographic
// edge order within the subtree.
void extend(const EnumContext& ctx, std::vector<std::uint32_t>& prefix, const BitVec& acc,
            std::size_t from, std::vector<std::vector<std::uint32_t>>& out) {
    if (acc == *ctx.target) out.push_back(prefix);
    if (prefix.size() == ctx.max_size) return;
    for (std::size_t i = from; i < ctx.pool.size(); ++i) {
        // No completion is possible once the remaining columns cannot cover
        // the missing rows.
        if (!ctx.target->is_subset_of(acc | ctx.suffix_or[i])) break;
        prefix.push_back(ctx.pool[i]);
        extend(ctx, prefix, acc | ctx.code->column(ctx.pool[i]), i + 1, out);
        prefix.pop_back();
    }
}

std::vector<std::vector<std::uint32_t>> edges_from(const EnumContext& ctx, std::size_t first) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> prefix{ctx.pool[first]};
    extend(ctx, prefix, ctx.code->column(ctx.pool[first]), first + 1, out);
    return out;
}

void check_inputs(const BinaryCode& code, const BitVec& outcome, std::uint32_t max_defects) {
    if (outcome.size() != code.rows())
        throw std::invalid_argument("outcome length differs from row count");
    if (max_defects == 0) throw std::invalid_argument("max_defects must be positive");
}

}  // namespace

Hypergraph build_hypergraph_serial(const BinaryCode& code, const BitVec& outcome,
                                   std::uint32_t max_defects) {
    check_inputs(code, outcome, max_defects);
    Hypergraph h{static_cast<std::uint32_t>(code.cols()), max_defects, {}};
    const EnumContext ctx = make_context(code, outcome, max_defects);
    for (std::size_t first = 0; first < ctx.pool.size(); ++first) {
        auto part = edges_from(ctx, first);
        h.edges.insert(h.edges.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    }
    return h;
}

Hypergraph build_hypergraph(const BinaryCode& code, const BitVec& outcome,
                            std::uint32_t max_defects) {
    check_inputs(code, outcome, max_defects);
    Hypergraph h{static_cast<std::uint32_t>(code.cols()), max_defects, {}};
    const EnumContext ctx = make_context(code, outcome, max_defects);
    std::vector<std::vector<std::vector<std::uint32_t>>> parts(ctx.pool.size());

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t first = 0; first < static_cast<std::int64_t>(ctx.pool.size()); ++first)
        parts[static_cast<std::size_t>(first)] = edges_from(ctx, static_cast<std::size_t>(first));

    // Concatenation in leading-vertex order preserves lexicographic order.
    for (auto& part : parts)
        h.edges.insert(h.edges.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    return h;
}

std::vector<std::vector<std::uint32_t>> adjacency(const Hypergraph& h) {
    std::vector<std::vector<std::uint32_t>> adj(h.vertices);
    for (const auto& e : h.edges)
        for (std::uint32_t u : e)
            for (std::uint32_t v : e)
                if (u != v) adj[u].push_back(v);
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return adj;
}

std::size_t degree(const Hypergraph& h, std::uint32_t v) {
    std::size_t d = 0;
    for (const auto& e : h.edges)
        if (std::binary_search(e.begin(), e.end(), v)) ++d;
    return d;
}

Coloring greedy_coloring(const Hypergraph& h) {
    const auto adj = adjacency(h);
    std::vector<bool> in_edge(h.vertices, false);
    for (const auto& e : h.edges)
        for (std::uint32_t v : e) in_edge[v] = true;

    Coloring col;
    col.color_of.assign(h.vertices, Coloring::uncolored);
    for (std::uint32_t v = 0; v < h.vertices; ++v) {
        if (!in_edge[v]) continue;
        std::vector<bool> used(adj[v].size() + 1, false);
        for (std::uint32_t u : adj[v]) {
            const std::int32_t c = col.color_of[u];
            if (c != Coloring::uncolored && static_cast<std::size_t>(c) < used.size())
                used[static_cast<std::size_t>(c)] = true;
        }
        std::int32_t c = 0;
        while (used[static_cast<std::size_t>(c)]) ++c;
        col.color_of[v] = c;
        col.colors = std::max(col.colors, c + 1);
    }
    return col;
}

}  // namespace pooltest
