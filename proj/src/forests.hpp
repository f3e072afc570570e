#pragma once

#include <cstdint>
#include <vector>

#include "rng.hpp"

namespace hypercount {

// Rooted r-uniform forest on an arbitrary vertex-id set: acyclic, one root
// per component. Vertex count is roots.size() + (r-1) * edges.size().
struct RootedForest {
    int r = 2;
    std::vector<uint32_t> roots;                // distinct ids, order fixed
    std::vector<uint32_t> vertices;             // all ids (roots + nonroots)
    std::vector<std::vector<uint32_t>> edges;   // each sorted, size r
};

// Code of a rooted forest relative to its root set: the partition of
// non-root vertices into (r-1)-groups plus a word of k-1 vertex ids followed
// by one root id. |codes| = F_{a,k} by the bijection.
struct ForestCode {
    int r = 2;
    std::vector<std::vector<uint32_t>> partition;  // k disjoint sorted (r-1)-sets
    std::vector<uint32_t> word;                    // length k (empty when k=0)
};

// Finite pmf on consecutive integers [lo, lo+probs.size()).
struct DiscretePMF {
    int64_t lo = 0;
    std::vector<double> probs;

    int64_t hi() const { return lo + (int64_t)probs.size() - 1; }
    double at(int64_t k) const {
        return (k < lo || k > hi()) ? 0.0 : probs[(size_t)(k - lo)];
    }
};

// Prufer-type codec. The peel order is fixed: always remove the leaf part
// that is lexicographically smallest as a sorted vertex tuple.
ForestCode encode_forest(const RootedForest& f);
RootedForest decode_forest(const ForestCode& code, const std::vector<uint32_t>& roots,
                           const std::vector<uint32_t>& nonroots);

// Uniform sample over all [roots]-rooted forests on roots+nonroots:
// random partition by shuffle-and-block, word uniform in V^{k-1} x roots.
RootedForest sample_forest(int r, const std::vector<uint32_t>& roots,
                           const std::vector<uint32_t>& nonroots, Rng& rng);

// Expected number of vertices at distance exactly ell from the root set in a
// uniform [a]-rooted forest with k edges: (a+(r-1)ell) (r-1)^ell (k)_ell / n^ell.
double distance_expectation(int r, int64_t a, int64_t k, int64_t ell);

// Law of Y_{m,a}: edges falling in the components rooted at the first a of 2a
// roots, p_k = (a/2) binom(m,k) (a+tk)^{k-1} (a+tl)^{l-1} / (2a+tm)^{m-1},
// t = r-1, l = m-k. Exact; the function asserts the mass sums to 1 within
// 1e-9 before normalizing away the residual rounding.
DiscretePMF smoothing_pmf(int r, int64_t m, int64_t a);

// Conditional law of the number of pendant edges rejoining the core: each of
// the a edges picks a core pair and a fresh (r-2)-set of isolated vertices,
//   p_a  proportional to  pi^a (1/a!) prod_{j<a} binom(I - j(r-2), r-2) * C^a,
// where I = |isolated|, C = core pair count, pi = p2/(1-p2) odds.
DiscretePMF pendant_reattach_pmf(int r, int64_t isolated, double core_pairs, double pi);

// p_{a+1}/p_a for the pendant law; strictly decreasing in a.
double pendant_reattach_ratio(int r, int64_t isolated, double core_pairs, double pi, int64_t a);

}  // namespace hypercount
