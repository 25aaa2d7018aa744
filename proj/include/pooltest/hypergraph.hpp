#pragma once

#include <cstdint>
#include <vector>

#include "pooltest/bitvec.hpp"
#include "pooltest/codes.hpp"

namespace pooltest {

// Vertices are samples; edges are exactly the candidate defect sets of size
// 1..max_edge_size whose outcome under the code equals the observed outcome.
// Edges are ascending within an edge and the edge list is lexicographic.
struct Hypergraph {
    std::uint32_t vertices = 0;
    std::uint32_t max_edge_size = 0;
    std::vector<std::vector<std::uint32_t>> edges;
};

// Enumerates candidate subsets restricted to columns covered by the outcome
// (column bitwise-subset of r), keeping only those whose OR equals r exactly.
// The default entry point parallelizes over the leading vertex when OpenMP is
// available; the serial variant is the reference both must agree with.
Hypergraph build_hypergraph(const BinaryCode& code, const BitVec& outcome, std::uint32_t max_defects);
Hypergraph build_hypergraph_serial(const BinaryCode& code, const BitVec& outcome, std::uint32_t max_defects);

// Neighbor lists under "share an edge", ascending and without duplicates.
// A vertex never neighbors itself even if it lies in a size>=2 edge.
std::vector<std::vector<std::uint32_t>> adjacency(const Hypergraph& h);

std::size_t degree(const Hypergraph& h, std::uint32_t v);

struct Coloring {
    static constexpr std::int32_t uncolored = -1;
    std::vector<std::int32_t> color_of;  // uncolored for vertices in no edge
    std::int32_t colors = 0;             // number of colors used
};

// Greedy proper coloring in ascending vertex order: each edge-covered vertex
// takes the smallest color absent among its already-colored neighbors.
Coloring greedy_coloring(const Hypergraph& h);

}  // namespace pooltest
