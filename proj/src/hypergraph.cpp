#include "hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace hypercount {

// ---------------------------------------------------------------------------
// rank space

uint64_t rank_space(int r, int64_t n) {
    if (r < 2 || n < 0) throw std::domain_error("rank_space: bad arguments");
    if (n < r) return 0;
    unsigned __int128 v = 1;
    for (int j = 1; j <= r; j++) {
        v = v * (unsigned __int128)(n - r + j) / (unsigned)j;
        if (v >= ((unsigned __int128)1 << 63))
            throw std::domain_error("rank_space: binom(n,r) exceeds the 2^63 guard");
    }
    return (uint64_t)v;
}

static uint64_t binom_small(uint64_t v, int j) {
    if (v < (uint64_t)j) return 0;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= j; i++) acc = acc * (v - j + i) / (unsigned)i;
    return (uint64_t)acc;
}

uint64_t colex_rank(const uint32_t* edge, int r) {
    uint64_t acc = 0;
    for (int i = 0; i < r; i++) acc += binom_small(edge[i], i + 1);
    return acc;
}

void colex_unrank(uint64_t rank, int r, uint32_t* out) {
    for (int i = r; i >= 1; i--) {
        uint64_t v;
        if (i == 1) {
            v = rank;
        } else if (i == 2) {
            v = (uint64_t)((1.0 + std::sqrt(1.0 + 8.0 * (double)rank)) / 2.0);
            while (binom_small(v, 2) > rank) v--;
            while (binom_small(v + 1, 2) <= rank) v++;
        } else if (i == 3) {
            v = (uint64_t)std::cbrt(6.0 * (double)rank) + 1;
            while (binom_small(v, 3) > rank) v--;
            while (binom_small(v + 1, 3) <= rank) v++;
        } else {
            uint64_t lo = i - 1, hi = i;
            while (binom_small(hi + 1, i) <= rank) hi = hi * 2 + 1;
            while (lo < hi) {
                uint64_t mid = lo + (hi - lo + 1) / 2;
                if (binom_small(mid, i) <= rank)
                    lo = mid;
                else
                    hi = mid - 1;
            }
            v = lo;
        }
        out[i - 1] = (uint32_t)v;
        rank -= binom_small(v, i);
    }
}

Hypergraph sample_hypergraph(int r, int64_t n, double p, Rng& rng) {
    if (r < 2 || n < r) throw std::domain_error("sample_hypergraph: need n >= r >= 2");
    if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("sample_hypergraph: p outside [0,1)");
    Hypergraph h;
    h.r = r;
    h.n = n;
    const uint64_t total = rank_space(r, n);
    if (p == 0.0 || total == 0) return h;
    const double log_q = std::log1p(-p);
    uint64_t cur = 0;  // next candidate rank
    while (cur < total) {
        double skip = std::floor(std::log(rng.u01_pos()) / log_q);
        if (skip >= (double)(total - cur)) break;
        cur += (uint64_t)skip;
        uint32_t e[16];
        colex_unrank(cur, r, e);
        for (int i = 0; i < r; i++) h.edges.push_back(e[i]);
        cur++;
    }
    return h;
}

Hypergraph mark_vertices(const Hypergraph& h, double prob, Rng& rng) {
    if (!(prob >= 0.0 && prob <= 1.0)) throw std::domain_error("mark_vertices: prob outside [0,1]");
    Hypergraph out = h;
    std::vector<uint32_t> marks;
    for (int64_t v = 0; v < h.n; v++)
        if (rng.bernoulli(prob)) marks.push_back((uint32_t)v);
    out.marks = std::move(marks);
    return out;
}

// ---------------------------------------------------------------------------
// components

ComponentSummary components(const Hypergraph& h) {
    const int64_t n = h.n;
    const int r = h.r;
    std::vector<uint32_t> parent((size_t)n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<int64_t> esz((size_t)n, 0), vsz((size_t)n, 1);
    for (int64_t i = 0; i < h.edge_count(); i++) {
        const uint32_t* e = h.edge(i);
        uint32_t a = find(e[0]);
        for (int j = 1; j < r; j++) {
            uint32_t b = find(e[j]);
            if (b != a) {
                parent[b] = a;
                vsz[a] += vsz[b];
                esz[a] += esz[b];
            }
        }
        esz[a]++;
    }
    ComponentSummary cs;
    cs.components.reserve((size_t)n / 4 + 1);
    for (int64_t v = 0; v < n; v++) {
        if (find((uint32_t)v) != (uint32_t)v) continue;
        ComponentInfo ci;
        ci.order = vsz[(size_t)v];
        ci.size = esz[(size_t)v];
        ci.nullity = 1 + (int64_t)(r - 1) * ci.size - ci.order;
        ci.min_vertex = (uint32_t)v;  // provisional; fixed up below
        cs.components.push_back(ci);
    }
    // the DSU root need not be the minimum id of its component
    {
        std::vector<int64_t> comp_of((size_t)n, -1);
        int64_t idx = 0;
        for (int64_t v = 0; v < n; v++)
            if (find((uint32_t)v) == (uint32_t)v) comp_of[(size_t)v] = idx++;
        std::vector<uint32_t> minv((size_t)idx, UINT32_MAX);
        for (int64_t v = 0; v < n; v++) {
            int64_t c = comp_of[find((uint32_t)v)];
            minv[(size_t)c] = std::min(minv[(size_t)c], (uint32_t)v);
        }
        for (size_t c = 0; c < (size_t)idx; c++) cs.components[c].min_vertex = minv[c];
    }
    cs.component_count = (int64_t)cs.components.size();
    int64_t best = -1, second = 0;
    for (int64_t c = 0; c < cs.component_count; c++) {
        const auto& ci = cs.components[(size_t)c];
        if (ci.size == 0 && ci.order == 1) cs.isolated_count++;
        if (best < 0) {
            best = c;
            continue;
        }
        const auto& bi = cs.components[(size_t)best];
        bool wins = ci.order > bi.order ||
                    (ci.order == bi.order && ci.min_vertex < bi.min_vertex);
        if (wins) {
            second = std::max(second, bi.order);
            best = c;
        } else {
            second = std::max(second, ci.order);
        }
    }
    cs.giant_index = best;
    if (best >= 0) {
        cs.L1 = cs.components[(size_t)best].order;
        cs.M1 = cs.components[(size_t)best].size;
        cs.N1 = cs.components[(size_t)best].nullity;
        cs.L2 = second;
    }
    return cs;
}

uint64_t connected_pairs(const ComponentSummary& cs) {
    uint64_t acc = 0;
    for (const auto& c : cs.components) acc += (uint64_t)c.order * (uint64_t)c.order;
    return acc;
}

std::map<int64_t, int64_t> tree_census(const ComponentSummary& cs) {
    std::map<int64_t, int64_t> census;
    for (const auto& c : cs.components)
        if (c.nullity == 0) census[c.size]++;
    return census;
}

int64_t complex_count(const ComponentSummary& cs) {
    int64_t acc = 0;
    for (const auto& c : cs.components)
        if (c.nullity >= 2) acc++;
    return acc;
}

// ---------------------------------------------------------------------------
// peeling

namespace {

struct Adjacency {
    std::vector<uint32_t> offsets;  // n+1
    std::vector<uint32_t> edge_ids;

    Adjacency(const Hypergraph& h) {
        offsets.assign((size_t)h.n + 1, 0);
        for (uint32_t v : h.edges) offsets[v + 1]++;
        for (size_t i = 1; i < offsets.size(); i++) offsets[i] += offsets[i - 1];
        edge_ids.resize(h.edges.size());
        std::vector<uint32_t> cursor(offsets.begin(), offsets.end() - 1);
        for (int64_t e = 0; e < h.edge_count(); e++)
            for (int j = 0; j < h.r; j++) edge_ids[cursor[h.edge(e)[j]]++] = (uint32_t)e;
    }
};

PeelResult peel(const Hypergraph& h, bool extended) {
    const int r = h.r;
    std::vector<char> marked((size_t)h.n, 0);
    if (extended && h.marks)
        for (uint32_t v : *h.marks) marked[v] = 1;

    Adjacency adj(h);
    std::vector<int32_t> degree((size_t)h.n, 0);
    for (uint32_t v : h.edges) degree[v]++;
    const int64_t ec = h.edge_count();
    std::vector<int32_t> support((size_t)ec, 0);
    std::vector<char> dead((size_t)ec, 0);
    for (int64_t e = 0; e < ec; e++)
        for (int j = 0; j < r; j++) {
            uint32_t v = h.edge(e)[j];
            if (marked[v] || degree[v] >= 2) support[(size_t)e]++;
        }
    std::queue<uint32_t> work;
    std::vector<char> queued((size_t)ec, 0);
    for (int64_t e = 0; e < ec; e++)
        if (support[(size_t)e] <= 1) {
            work.push((uint32_t)e);
            queued[(size_t)e] = 1;
        }
    while (!work.empty()) {
        uint32_t e = work.front();
        work.pop();
        if (dead[e]) continue;
        dead[e] = 1;
        for (int j = 0; j < r; j++) {
            uint32_t v = h.edge(e)[j];
            if (--degree[v] == 1 && !marked[v]) {
                // v's one remaining live edge loses this support vertex
                for (uint32_t f = adj.offsets[v]; f < adj.offsets[v + 1]; f++) {
                    uint32_t fe = adj.edge_ids[f];
                    if (dead[fe] || fe == e) continue;
                    if (--support[fe] <= 1 && !queued[fe]) {
                        work.push(fe);
                        queued[fe] = 1;
                    }
                }
            }
        }
    }
    PeelResult out;
    out.sub.r = r;
    out.sub.n = h.n;
    out.sub.marks = h.marks;
    std::vector<char> in_sub((size_t)h.n, 0);
    for (int64_t e = 0; e < ec; e++) {
        if (dead[(size_t)e]) continue;
        for (int j = 0; j < r; j++) {
            out.sub.edges.push_back(h.edge(e)[j]);
            in_sub[h.edge(e)[j]] = 1;
        }
    }
    if (extended)
        for (int64_t v = 0; v < h.n; v++)
            if (marked[(size_t)v]) in_sub[(size_t)v] = 1;
    for (int64_t v = 0; v < h.n; v++)
        if (in_sub[(size_t)v]) out.vertices.push_back((uint32_t)v);
    return out;
}

}  // namespace

PeelResult core_of(const Hypergraph& h) { return peel(h, false); }

PeelResult extended_core_of(const Hypergraph& h) {
    if (!h.marks) throw std::invalid_argument("extended_core_of: hypergraph carries no marks");
    return peel(h, true);
}

std::vector<uint32_t> mantle(const Hypergraph& h, const std::vector<uint32_t>& core_subset) {
    PeelResult ec = extended_core_of(h);
    std::vector<char> in_core((size_t)h.n, 0);
    for (uint32_t v : ec.vertices) in_core[v] = 1;
    for (uint32_t v : core_subset)
        if (v >= h.n || !in_core[v])
            throw std::invalid_argument("mantle: core_subset not inside the extended core");

    // Which surviving edges belong to the extended core (as edge tuples)?
    // Peeled edges are exactly h.edges minus ec.sub.edges; recover by id.
    std::vector<char> edge_in_core((size_t)h.edge_count(), 0);
    {
        size_t ptr = 0;
        for (int64_t e = 0; e < h.edge_count(); e++) {
            if (ptr < ec.sub.edges.size() &&
                std::equal(h.edge(e), h.edge(e) + h.r, ec.sub.edges.begin() + ptr)) {
                edge_in_core[(size_t)e] = 1;
                ptr += h.r;
            }
        }
    }

    // Multi-source BFS from the core vertex set through non-core edges; each
    // reached vertex hangs off exactly one core anchor.
    Adjacency adj(h);
    std::vector<int64_t> anchor((size_t)h.n, -1);
    std::queue<uint32_t> bfs;
    for (uint32_t v : ec.vertices) {
        anchor[v] = v;
        bfs.push(v);
    }
    std::vector<char> edge_done((size_t)h.edge_count(), 0);
    while (!bfs.empty()) {
        uint32_t v = bfs.front();
        bfs.pop();
        for (uint32_t f = adj.offsets[v]; f < adj.offsets[v + 1]; f++) {
            uint32_t e = adj.edge_ids[f];
            if (edge_done[e] || edge_in_core[e]) continue;
            edge_done[e] = 1;
            int64_t a = anchor[v];
            for (int j = 0; j < h.r; j++) {
                uint32_t w = h.edge(e)[j];
                if (anchor[w] < 0) {
                    anchor[w] = a;
                    bfs.push(w);
                }
            }
        }
    }
    std::vector<char> wanted((size_t)h.n, 0);
    for (uint32_t v : core_subset) wanted[v] = 1;
    std::vector<uint32_t> out;
    for (int64_t v = 0; v < h.n; v++)
        if (!in_core[(size_t)v] && anchor[(size_t)v] >= 0 && wanted[(size_t)anchor[(size_t)v]])
            out.push_back((uint32_t)v);
    return out;
}

// ---------------------------------------------------------------------------
// edge-list format

std::string write_edge_list(const Hypergraph& h) {
    std::ostringstream os;
    os << h.r << ' ' << h.n << '\n';
    for (int64_t e = 0; e < h.edge_count(); e++) {
        const uint32_t* ed = h.edge(e);
        for (int j = 0; j < h.r; j++) os << ed[j] << (j + 1 < h.r ? ' ' : '\n');
    }
    if (h.marks) {
        os << "marks:";
        for (uint32_t v : *h.marks) os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

Hypergraph read_edge_list(const std::string& text) {
    std::istringstream is(text);
    Hypergraph h;
    if (!(is >> h.r >> h.n)) throw std::invalid_argument("edge list: missing 'r n' header");
    std::string tok;
    while (is >> tok) {
        if (tok == "marks:") {
            std::vector<uint32_t> marks;
            uint32_t v;
            while (is >> v) marks.push_back(v);
            h.marks = std::move(marks);
            break;
        }
        uint32_t first = (uint32_t)std::stoul(tok);
        h.edges.push_back(first);
        for (int j = 1; j < h.r; j++) {
            uint32_t v;
            if (!(is >> v)) throw std::invalid_argument("edge list: truncated edge");
            h.edges.push_back(v);
        }
    }
    return h;
}

}  // namespace hypercount
