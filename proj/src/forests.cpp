#include "forests.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "mathx.hpp"
#include "params.hpp"

namespace hypercount {

namespace {

struct Dsu {
    std::vector<uint32_t> parent;
    explicit Dsu(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// dense index of a vertex-id list
std::map<uint32_t, uint32_t> index_of(const std::vector<uint32_t>& ids) {
    std::map<uint32_t, uint32_t> m;
    for (uint32_t i = 0; i < ids.size(); i++) {
        if (!m.emplace(ids[i], i).second)
            throw std::invalid_argument("forest: duplicate vertex id");
    }
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// encode

ForestCode encode_forest(const RootedForest& f) {
    const int r = f.r;
    const size_t k = f.edges.size();
    const size_t n = f.vertices.size();
    if (f.roots.empty()) throw std::invalid_argument("forest: no roots");
    if (n != f.roots.size() + (size_t)(r - 1) * k)
        throw std::invalid_argument("forest: vertex count is not a + (r-1)k");

    auto vidx = index_of(f.vertices);
    std::set<uint32_t> rootset(f.roots.begin(), f.roots.end());
    if (rootset.size() != f.roots.size())
        throw std::invalid_argument("forest: duplicate root");
    for (uint32_t rt : f.roots)
        if (!vidx.count(rt)) throw std::invalid_argument("forest: root not among vertices");

    // acyclicity: every edge must merge r previously-separate components
    Dsu dsu(n);
    for (const auto& e : f.edges) {
        if ((int)e.size() != r) throw std::invalid_argument("forest: edge of wrong size");
        for (int j = 1; j < r; j++)
            if (!dsu.unite(vidx.at(e[0]), vidx.at(e[j])))
                throw std::invalid_argument("forest: cyclic input");
    }
    // exactly one root per component
    {
        std::vector<int> root_hits(n, 0);
        for (uint32_t rt : f.roots) root_hits[dsu.find(vidx.at(rt))]++;
        for (size_t v = 0; v < n; v++)
            if (dsu.find((uint32_t)v) == v && root_hits[v] != 1)
                throw std::invalid_argument("forest: component with root multiplicity != 1");
    }

    // BFS distances from the root set; each edge's "old" vertex is its unique
    // closest-to-roots member, the rest form the edge's group.
    std::vector<std::vector<uint32_t>> edges_at(n);
    for (uint32_t ei = 0; ei < k; ei++)
        for (uint32_t v : f.edges[ei]) edges_at[vidx.at(v)].push_back(ei);
    std::vector<int64_t> dist(n, -1);
    std::queue<uint32_t> bfs;
    for (uint32_t rt : f.roots) {
        dist[vidx.at(rt)] = 0;
        bfs.push(vidx.at(rt));
    }
    std::vector<char> edge_seen(k, 0);
    while (!bfs.empty()) {
        uint32_t v = bfs.front();
        bfs.pop();
        for (uint32_t ei : edges_at[v]) {
            if (edge_seen[ei]) continue;
            edge_seen[ei] = 1;
            for (uint32_t w : f.edges[ei]) {
                uint32_t wi = vidx.at(w);
                if (dist[wi] < 0) {
                    dist[wi] = dist[v] + 1;
                    bfs.push(wi);
                }
            }
        }
    }

    struct Part {
        std::vector<uint32_t> group;  // sorted ids
        uint32_t old_vertex;
        uint32_t edge_id;
    };
    std::vector<Part> parts(k);
    std::vector<uint32_t> part_of(n, UINT32_MAX);  // dense vertex -> part index
    for (uint32_t ei = 0; ei < k; ei++) {
        const auto& e = f.edges[ei];
        int old_pos = -1;
        for (int j = 0; j < r; j++) {
            if (dist[vidx.at(e[j])] < 0)
                throw std::invalid_argument("forest: vertex unreachable from roots");
            if (old_pos < 0 || dist[vidx.at(e[j])] < dist[vidx.at(e[old_pos])]) old_pos = j;
        }
        Part& p = parts[ei];
        p.edge_id = ei;
        p.old_vertex = e[old_pos];
        for (int j = 0; j < r; j++)
            if (j != old_pos) p.group.push_back(e[j]);
        std::sort(p.group.begin(), p.group.end());
        for (uint32_t v : p.group) part_of[vidx.at(v)] = ei;
    }

    // peel: repeatedly take the lexicographically smallest leaf part
    std::vector<uint32_t> degree(n, 0);
    for (const auto& e : f.edges)
        for (uint32_t v : e) degree[vidx.at(v)]++;
    std::vector<uint32_t> busy(k, 0);  // group vertices with degree >= 2
    for (uint32_t ei = 0; ei < k; ei++)
        for (uint32_t v : parts[ei].group)
            if (degree[vidx.at(v)] >= 2) busy[ei]++;

    auto cmp = [&](uint32_t a, uint32_t b) { return parts[a].group > parts[b].group; };
    std::priority_queue<uint32_t, std::vector<uint32_t>, decltype(cmp)> leaves(cmp);
    for (uint32_t ei = 0; ei < k; ei++)
        if (busy[ei] == 0) leaves.push(ei);

    ForestCode code;
    code.r = r;
    code.partition.resize(k);
    code.word.reserve(k);
    for (size_t step = 0; step < k; step++) {
        if (leaves.empty()) throw std::invalid_argument("forest: peel stuck (not a forest)");
        uint32_t ei = leaves.top();
        leaves.pop();
        const Part& p = parts[ei];
        code.word.push_back(p.old_vertex);
        uint32_t ov = vidx.at(p.old_vertex);
        if (--degree[ov] == 1 && part_of[ov] != UINT32_MAX) {
            uint32_t q = part_of[ov];
            if (--busy[q] == 0) leaves.push(q);
        }
    }
    // order partition parts to match nothing in particular; the code's
    // partition is a set of parts, store them sorted for canonical compare
    for (uint32_t ei = 0; ei < k; ei++) code.partition[ei] = parts[ei].group;
    std::sort(code.partition.begin(), code.partition.end());
    return code;
}

// ---------------------------------------------------------------------------
// decode

RootedForest decode_forest(const ForestCode& code, const std::vector<uint32_t>& roots,
                           const std::vector<uint32_t>& nonroots) {
    const int r = code.r;
    const size_t k = code.partition.size();
    if (r < 2) throw std::invalid_argument("code: r must be >= 2");
    if (code.word.size() != k)
        throw std::invalid_argument("code: word length must equal part count");
    if (nonroots.size() != (size_t)(r - 1) * k)
        throw std::invalid_argument("code: nonroot count must be (r-1)k");

    RootedForest f;
    f.r = r;
    f.roots = roots;
    f.vertices = roots;
    f.vertices.insert(f.vertices.end(), nonroots.begin(), nonroots.end());
    auto vidx = index_of(f.vertices);  // also rejects duplicate ids
    std::set<uint32_t> rootset(roots.begin(), roots.end());

    if (k == 0) return f;
    if (!rootset.count(code.word.back()))
        throw std::invalid_argument("code: last word entry must be a root");

    // part membership and disjointness
    std::vector<uint32_t> part_of(f.vertices.size(), UINT32_MAX);
    for (uint32_t pi = 0; pi < k; pi++) {
        const auto& g = code.partition[pi];
        if (g.size() != (size_t)(r - 1))
            throw std::invalid_argument("code: part of wrong size");
        for (uint32_t v : g) {
            auto it = vidx.find(v);
            if (it == vidx.end() || rootset.count(v))
                throw std::invalid_argument("code: part vertex not a nonroot vertex");
            if (part_of[it->second] != UINT32_MAX)
                throw std::invalid_argument("code: parts not disjoint");
            part_of[it->second] = pi;
        }
    }
    for (size_t v = 0; v < f.vertices.size(); v++)
        if (!rootset.count(f.vertices[v]) && part_of[v] == UINT32_MAX)
            throw std::invalid_argument("code: nonroot vertex missing from partition");

    // pending[pi] = occurrences of pi's vertices in the unread word suffix
    std::vector<uint32_t> pending(k, 0);
    for (uint32_t w : code.word) {
        auto it = vidx.find(w);
        if (it == vidx.end()) throw std::invalid_argument("code: word entry not a vertex");
        if (!rootset.count(w) && part_of[it->second] != UINT32_MAX) pending[part_of[it->second]]++;
    }

    auto cmp = [&](uint32_t a, uint32_t b) { return code.partition[a] > code.partition[b]; };
    std::priority_queue<uint32_t, std::vector<uint32_t>, decltype(cmp)> avail(cmp);
    for (uint32_t pi = 0; pi < k; pi++)
        if (pending[pi] == 0) avail.push(pi);

    f.edges.reserve(k);
    for (size_t step = 0; step < k; step++) {
        if (avail.empty()) throw std::invalid_argument("code: malformed word (no free part)");
        uint32_t pi = avail.top();
        avail.pop();
        uint32_t w = code.word[step];
        std::vector<uint32_t> e = code.partition[pi];
        e.push_back(w);
        std::sort(e.begin(), e.end());
        f.edges.push_back(std::move(e));
        // consume w: one fewer pending occurrence for its part
        uint32_t wi = vidx.at(w);
        if (!rootset.count(w) && part_of[wi] != UINT32_MAX) {
            if (--pending[part_of[wi]] == 0) avail.push(part_of[wi]);
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// sampling

RootedForest sample_forest(int r, const std::vector<uint32_t>& roots,
                           const std::vector<uint32_t>& nonroots, Rng& rng) {
    if (r < 2) throw std::invalid_argument("sample_forest: r must be >= 2");
    if (roots.empty()) throw std::invalid_argument("sample_forest: need at least one root");
    if (nonroots.size() % (size_t)(r - 1) != 0)
        throw std::invalid_argument("sample_forest: nonroot count must be a multiple of r-1");
    const size_t k = nonroots.size() / (r - 1);

    // uniform partition: every partition arises from exactly (r-1)!^k k!
    // orderings, so shuffle-and-block is uniform
    std::vector<uint32_t> shuffled = nonroots;
    for (size_t i = shuffled.size(); i > 1; i--)
        std::swap(shuffled[i - 1], shuffled[rng.below(i)]);

    ForestCode code;
    code.r = r;
    code.partition.resize(k);
    for (size_t pi = 0; pi < k; pi++) {
        code.partition[pi].assign(shuffled.begin() + pi * (r - 1),
                                  shuffled.begin() + (pi + 1) * (r - 1));
        std::sort(code.partition[pi].begin(), code.partition[pi].end());
    }
    std::sort(code.partition.begin(), code.partition.end());

    if (k > 0) {
        std::vector<uint32_t> all = roots;
        all.insert(all.end(), nonroots.begin(), nonroots.end());
        code.word.resize(k);
        for (size_t i = 0; i + 1 < k; i++) code.word[i] = all[rng.below(all.size())];
        code.word[k - 1] = roots[rng.below(roots.size())];
    }
    return decode_forest(code, roots, nonroots);
}

double distance_expectation(int r, int64_t a, int64_t k, int64_t ell) {
    if (r < 2 || a < 1 || k < 0 || ell < 0)
        throw std::domain_error("distance_expectation: bad arguments");
    if (ell == 0) return (double)a;
    if (ell > k) return 0.0;
    const double n = (double)(a + (int64_t)(r - 1) * k);
    double v = (double)(a + (r - 1) * ell);
    for (int64_t j = 0; j < ell; j++) v *= (double)(r - 1) * (double)(k - j) / n;
    return v;
}

// ---------------------------------------------------------------------------
// pmfs

DiscretePMF smoothing_pmf(int r, int64_t m, int64_t a) {
    if (r < 2 || m < 0 || a < 1) throw std::domain_error("smoothing_pmf: bad arguments");
    DiscretePMF pmf;
    pmf.lo = 0;
    pmf.probs.assign((size_t)m + 1, 0.0);
    if (m == 0) {
        pmf.probs[0] = 1.0;
        return pmf;
    }
    const double t = r - 1;
    std::vector<double> logp((size_t)m + 1);
    double mx = -1e300;
    const double lg_m = std::lgamma((double)m + 1.0);
    const double head = std::log(a / 2.0) - (m - 1) * std::log(2 * a + t * m);
    for (int64_t k = 0; k <= m; k++) {
        int64_t l = m - k;
        // grouped so that k <-> l swaps commute term-by-term: p_k == p_{m-k}
        // holds bitwise, not just within rounding
        double fact_kl = std::lgamma((double)k + 1.0) + std::lgamma((double)l + 1.0);
        double powers = (k - 1) * std::log(a + t * k) + (l - 1) * std::log(a + t * l);
        double lp = head + (lg_m - fact_kl) + powers;
        logp[(size_t)k] = lp;
        mx = std::max(mx, lp);
    }
    double sum = 0.0;
    for (int64_t k = 0; k <= m; k++) {
        pmf.probs[(size_t)k] = std::exp(logp[(size_t)k] - mx);
        sum += pmf.probs[(size_t)k];
    }
    // Eq-level mass must be 1 before normalization: assert, don't repair.
    double total = sum * std::exp(mx);
    if (std::fabs(total - 1.0) > 1e-9)
        throw std::logic_error("smoothing_pmf: mass deviates from 1 beyond 1e-9");
    for (auto& p : pmf.probs) p /= sum;
    return pmf;
}

double pendant_reattach_ratio(int r, int64_t isolated, double core_pairs, double pi, int64_t a) {
    if (r < 2) throw std::domain_error("pendant_reattach_ratio: r must be >= 2");
    if (!(pi > 0) || core_pairs <= 0 || isolated < 0 || a < 0)
        throw std::domain_error("pendant_reattach_ratio: bad arguments");
    // q_a = pi/(a+1) * core_pairs * (isolated - a(r-2))_{r-2} / (r-2)!
    double ff = 1.0;
    for (int j = 0; j < r - 2; j++) ff *= (double)(isolated - a * (int64_t)(r - 2) - j);
    return pi / (double)(a + 1) * core_pairs * ff / factorial(r - 2);
}

DiscretePMF pendant_reattach_pmf(int r, int64_t isolated, double core_pairs, double pi) {
    if (r < 2) throw std::domain_error("pendant_reattach_pmf: r must be >= 2");
    if (isolated < 0 || core_pairs < 0 || pi < 0)
        throw std::domain_error("pendant_reattach_pmf: bad arguments");
    // support cap: (r-2)-sets consume isolated vertices; for r=2 the sets are
    // empty (empty product = 1) and the law truncates where the mass dies
    int64_t amax;
    if (r > 2) {
        amax = isolated / (r - 2);
    } else {
        double mean = pi * core_pairs;
        amax = (int64_t)std::ceil(mean + 12.0 * std::sqrt(mean + 1.0) + 40.0);
    }
    DiscretePMF pmf;
    pmf.lo = 0;
    if (pi == 0.0 || core_pairs == 0.0) {
        pmf.probs = {1.0};
        return pmf;
    }
    std::vector<double> logw;
    logw.push_back(0.0);  // a = 0 term, weight 1
    double lw = 0.0, mx = 0.0;
    for (int64_t a = 0; a < amax; a++) {
        double ff = 1.0;
        for (int j = 0; j < r - 2; j++) ff *= (double)(isolated - a * (int64_t)(r - 2) - j);
        if (ff <= 0) break;
        lw += std::log(pi * core_pairs * ff / factorial(r - 2)) - std::log((double)(a + 1));
        logw.push_back(lw);
        mx = std::max(mx, lw);
    }
    pmf.probs.resize(logw.size());
    double sum = 0.0;
    for (size_t i = 0; i < logw.size(); i++) {
        pmf.probs[i] = std::exp(logw[i] - mx);
        sum += pmf.probs[i];
    }
    for (auto& p : pmf.probs) p /= sum;
    return pmf;
}

}  // namespace hypercount
