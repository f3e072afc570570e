#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rng.hpp"

namespace hypercount {

// r-uniform hypergraph on vertex set [0, n). Edges are flattened r-tuples of
// distinct vertex ids, each tuple sorted ascending; tuples are distinct.
struct Hypergraph {
    int r = 2;
    int64_t n = 0;
    std::vector<uint32_t> edges;                       // size = r * edge_count
    std::optional<std::vector<uint32_t>> marks;        // sorted vertex ids

    int64_t edge_count() const { return (int64_t)edges.size() / r; }
    const uint32_t* edge(int64_t i) const { return edges.data() + (size_t)i * r; }
};

struct ComponentInfo {
    int64_t order = 0;     // |C|
    int64_t size = 0;      // e(C)
    int64_t nullity = 0;   // 1 + (r-1) e(C) - |C|
    uint32_t min_vertex = 0;
};

// Per-component tallies plus the global statistics of interest. The largest
// component is chosen by order, ties broken by smallest minimum vertex id.
struct ComponentSummary {
    std::vector<ComponentInfo> components;
    int64_t giant_index = -1;
    int64_t L1 = 0, M1 = 0, N1 = 0, L2 = 0;
    int64_t component_count = 0;
    int64_t isolated_count = 0;
};

ComponentSummary components(const Hypergraph& h);

// H^r(n,p): every edge independent with probability p. Sampling skips
// geometrically through the colexicographic rank space [0, binom(n,r)),
// unranking each hit, so the cost is proportional to the edge count.
Hypergraph sample_hypergraph(int r, int64_t n, double p, Rng& rng);

// colex rank of the i-th r-subset; exposed for tests
uint64_t colex_rank(const uint32_t* edge, int r);
void colex_unrank(uint64_t rank, int r, uint32_t* out);

// binom(n,r) guarded below 2^63; throws when the rank space would overflow.
uint64_t rank_space(int r, int64_t n);

// Mark each vertex independently; returns a copy with marks set.
Hypergraph mark_vertices(const Hypergraph& h, double prob, Rng& rng);

// Core: maximal sub-hypergraph with no isolated vertices in which every edge
// has >= 2 vertices lying in other edges. Extended core: marked vertices also
// count as support and marked isolated vertices stay.
struct PeelResult {
    Hypergraph sub;                 // surviving edges (marks carried over)
    std::vector<uint32_t> vertices; // vertex set of the sub-hypergraph, sorted
};
PeelResult core_of(const Hypergraph& h);
PeelResult extended_core_of(const Hypergraph& h);

// Vertices outside the extended core whose tree path into it lands in A.
std::vector<uint32_t> mantle(const Hypergraph& h, const std::vector<uint32_t>& core_subset);

// sum over components of |C|^2 (ordered vertex pairs joined by a path)
uint64_t connected_pairs(const ComponentSummary& cs);
// k -> number of tree components (nullity 0) with k edges
std::map<int64_t, int64_t> tree_census(const ComponentSummary& cs);
// components with nullity >= 2
int64_t complex_count(const ComponentSummary& cs);

// Edge-list text format: header "r n", one sorted edge per line, optional
// trailing "marks: id id ...".
std::string write_edge_list(const Hypergraph& h);
Hypergraph read_edge_list(const std::string& text);

}  // namespace hypercount
