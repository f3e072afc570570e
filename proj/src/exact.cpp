#include "exact.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace hypercount {

static void check_r(int r) {
    if (r < 2) throw std::domain_error("edge size r must be >= 2");
}

// binom(a,r) clamped to a cap, without overflow.
static int64_t binom_capped(int64_t a, int r, int64_t cap) {
    if (a < r) return 0;
    unsigned __int128 v = 1;
    for (int j = 1; j <= r; j++) {
        v = v * (unsigned __int128)(a - r + j) / (unsigned)j;
        if (v > (unsigned __int128)cap) return cap;
    }
    return (int64_t)v;
}

BigCount total_hypergraphs(int r, int64_t a, int64_t b) {
    check_r(r);
    if (a < 0 || b < 0) throw std::domain_error("total_hypergraphs: negative arguments");
    BigCount slots;
    mpz_bin_uiui(slots.get_mpz_t(), (unsigned long)a, (unsigned long)r);
    BigCount out;
    mpz_bin_ui(out.get_mpz_t(), slots.get_mpz_t(), (unsigned long)b);
    return out;
}

// ---------------------------------------------------------------------------
// ConnectedCountTable

ConnectedCountTable::ConnectedCountTable(int r, int threads) : r_(r) {
    check_r(r);
    threads_ = threads > 0 ? threads : (int)std::max(1u, std::thread::hardware_concurrency());
    d_.resize(2);
    b_.resize(1);
    b_[0] = {BigCount(1)};
    d_[0] = {};            // s = 0 unused
    d_[1] = {BigCount(1)}; // one vertex, zero edges
}

int64_t ConnectedCountTable::edge_slots(int64_t a) const {
    return binom_capped(a, r_, cap_m_);
}

void ConnectedCountTable::fill_row_range(int64_t s, int64_t m_from, int64_t m_to,
                                         const std::vector<BigCount>& rowbin) {
    BigCount inner, acc;
    const int64_t m_min_s = (s - 1 + r_ - 2) / (r_ - 1);
    for (int64_t m = m_from; m < m_to; m++) {
        if (m < m_min_s) continue;
        acc = b_[s][m];
        for (int64_t sp = 1; sp < s; sp++) {
            const int64_t m_min_sp = sp == 1 ? 0 : (sp - 1 + r_ - 2) / (r_ - 1);
            int64_t klo = std::max(m_min_sp, m - edge_slots(s - sp));
            int64_t khi = std::min(m, (int64_t)d_[sp].size() - 1);
            if (klo > khi) continue;
            inner = 0;
            const auto& drow = d_[sp];
            const auto& brow = b_[s - sp];
            for (int64_t k = klo; k <= khi; k++) {
                if (mpz_sgn(drow[k].get_mpz_t()) == 0) continue;
                mpz_addmul(inner.get_mpz_t(), drow[k].get_mpz_t(), brow[m - k].get_mpz_t());
            }
            mpz_submul(acc.get_mpz_t(), inner.get_mpz_t(), rowbin[sp - 1].get_mpz_t());
        }
        d_[s][m] = acc;
    }
}

void ConnectedCountTable::fill_row(int64_t s) {
    const int64_t hi = edge_slots(s);
    d_[s].assign(hi + 1, BigCount(0));
    std::vector<BigCount> rowbin(s);
    for (int64_t j = 0; j < s; j++)
        mpz_bin_uiui(rowbin[j].get_mpz_t(), (unsigned long)(s - 1), (unsigned long)j);
    const int64_t m_min_s = (s - 1 + r_ - 2) / (r_ - 1);
    const int64_t span = hi - m_min_s + 1;
    const int nthreads = (int)std::min<int64_t>(threads_, std::max<int64_t>(1, span / 8));
    if (nthreads <= 1) {
        fill_row_range(s, 0, hi + 1, rowbin);
        return;
    }
    std::vector<std::thread> pool;
    int64_t chunk = (span + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; t++) {
        int64_t from = m_min_s + t * chunk;
        int64_t to = std::min(hi + 1, from + chunk);
        if (from >= to) break;
        pool.emplace_back([this, s, from, to, &rowbin] { fill_row_range(s, from, to, rowbin); });
    }
    for (auto& th : pool) th.join();
}

const BigCount& ConnectedCountTable::count(int64_t s, int64_t m) {
    if (s < 1 || m < 0) throw std::domain_error("connected_count: need s >= 1, m >= 0");
    if (m > cap_m_) {
        // Edge cap grew: every row depends on all smaller m, so rebuild.
        cap_m_ = std::max<int64_t>(m, 2 * cap_m_);
        b_.assign(1, {BigCount(1)});
        for (size_t a = 1; a < d_.size(); a++) d_[a].clear();
        d_.resize(2);
        d_[1] = {BigCount(1)};
    }
    while ((int64_t)b_.size() <= s) {
        int64_t a = (int64_t)b_.size();
        int64_t hi = edge_slots(a);
        std::vector<BigCount> row(hi + 1);
        BigCount slots;
        mpz_bin_uiui(slots.get_mpz_t(), (unsigned long)a, (unsigned long)r_);
        for (int64_t j = 0; j <= hi; j++)
            mpz_bin_ui(row[j].get_mpz_t(), slots.get_mpz_t(), (unsigned long)j);
        b_.push_back(std::move(row));
    }
    while ((int64_t)d_.size() <= s) {
        int64_t next = (int64_t)d_.size();
        d_.emplace_back();
        fill_row(next);
    }
    if (s == 1) return m == 0 ? d_[1][0] : zero_;
    if (m >= (int64_t)d_[s].size()) return zero_;
    return d_[s][m];
}

// Shared per-(r) tables behind a lock; reads after fill go through count()
// which only mutates when growth is required.
static std::mutex g_tables_mu;
static std::map<int, ConnectedCountTable>& tables() {
    static std::map<int, ConnectedCountTable> t;
    return t;
}

BigCount connected_count(int r, int64_t s, int64_t m, int threads) {
    check_r(r);
    if (s < 1 || m < 0) throw std::domain_error("connected_count: need s >= 1, m >= 0");
    std::lock_guard<std::mutex> lk(g_tables_mu);
    auto it = tables().find(r);
    if (it == tables().end()) it = tables().emplace(r, ConnectedCountTable(r, threads)).first;
    return it->second.count(s, m);
}

BigCount connected_count_by_nullity(int r, int64_t s, int64_t t, int threads) {
    check_r(r);
    if (s < 1 || t < 0) throw std::domain_error("connected_count_by_nullity: bad arguments");
    if ((s + t - 1) % (r - 1) != 0) return BigCount(0);
    return connected_count(r, s, (s + t - 1) / (r - 1), threads);
}

// ---------------------------------------------------------------------------
// brute force oracle

namespace {
struct MiniDsu {
    std::vector<int> parent;
    explicit MiniDsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// sorted r-subsets of [s] in lexicographic order
std::vector<std::vector<int>> all_edges(int s, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[i] == s - r + i) i--;
        if (i < 0) break;
        cur[i]++;
        for (int j = i + 1; j < r; j++) cur[j] = cur[j - 1] + 1;
    }
    return out;
}
}  // namespace

BigCount brute_connected(int r, int64_t s, int64_t m) {
    check_r(r);
    if (s < 1 || m < 0) throw std::domain_error("brute_connected: bad arguments");
    BigCount work = total_hypergraphs(r, s, m);
    if (work > 10000000) {
        throw std::domain_error("brute_connected: refused, " + big_str(work) +
                                " subsets exceed the 1e7 guard");
    }
    if (s == 1) return BigCount(m == 0 ? 1 : 0);
    if ((int64_t)r > s) return BigCount(0);
    auto edges = all_edges((int)s, r);
    const int64_t ecount = (int64_t)edges.size();
    if (m > ecount) return BigCount(0);
    if (m == 0) return BigCount(0);  // s >= 2 cannot be connected without edges

    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    uint64_t hits = 0;
    while (true) {
        MiniDsu dsu((int)s);
        for (int64_t i = 0; i < m; i++)
            for (int j = 1; j < r; j++) dsu.unite(edges[idx[i]][0], edges[idx[i]][j]);
        int root = dsu.find(0);
        bool conn = true;
        for (int v = 1; v < s && conn; v++) conn = dsu.find(v) == root;
        if (conn) hits++;
        // next m-combination of [ecount]
        int64_t i = m - 1;
        while (i >= 0 && idx[i] == ecount - m + i) i--;
        if (i < 0) break;
        idx[i]++;
        for (int64_t j = i + 1; j < m; j++) idx[j] = idx[j - 1] + 1;
    }
    return BigCount((unsigned long)hits);
}

// ---------------------------------------------------------------------------
// forests and partitions

BigCount partition_count(int64_t k, int64_t t) {
    if (k < 0 || t < 0) throw std::domain_error("partition_count: negative arguments");
    if (k == 0) return BigCount(1);
    if (t < 1) throw std::domain_error("partition_count: t must be >= 1 when k >= 1");
    BigCount num = big_factorial((uint64_t)(k * t));
    BigCount den = big_factorial((uint64_t)k);
    BigCount tf = big_factorial((uint64_t)t);
    mpz_pow_ui(tf.get_mpz_t(), tf.get_mpz_t(), (unsigned long)k);
    den *= tf;
    BigCount out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

BigCount forest_count(int r, int64_t a, int64_t k) {
    check_r(r);
    if (a < 1 || k < 0) throw std::domain_error("forest_count: need a >= 1, k >= 0");
    if (k == 0) return BigCount(1);
    const uint64_t n = (uint64_t)(a + (int64_t)(r - 1) * k);
    BigCount out((unsigned long)a);
    BigCount np;
    mpz_ui_pow_ui(np.get_mpz_t(), n, (unsigned long)(k - 1));
    out *= np;
    out *= partition_count(k, r - 1);
    return out;
}

}  // namespace hypercount
