#pragma once

#include <cstdint>
#include <vector>

#include "bigcount.hpp"

namespace hypercount {

// binom(binom(a,r), b): all r-uniform hypergraphs on [a] with b edges.
BigCount total_hypergraphs(int r, int64_t a, int64_t b);

// Exact connected counts via the component-removal recurrence
//   D(s,m) = B(s,m) - sum_{1<=s'<s} binom(s-1,s'-1) sum_k D(s',k) B(s-s',m-k),
// memoized over (s,m) per edge size r. Rows are filled in increasing s; the
// entries of one row are independent given earlier rows, so row fill is
// parallelized deterministically.
class ConnectedCountTable {
  public:
    explicit ConnectedCountTable(int r, int threads = 0);

    const BigCount& count(int64_t s, int64_t m);  // grows the table as needed
    int r() const { return r_; }

  private:
    void fill_row(int64_t s);
    void fill_row_range(int64_t s, int64_t m_from, int64_t m_to,
                        const std::vector<BigCount>& rowbin);
    int64_t edge_slots(int64_t a) const;  // min(binom(a,r), cap_m_)

    int r_;
    int threads_;
    int64_t cap_m_ = 0;
    std::vector<std::vector<BigCount>> d_;  // d_[s][m]
    std::vector<std::vector<BigCount>> b_;  // b_[a][j] = total_hypergraphs(r,a,j)
    BigCount zero_;
};

// Convenience wrappers over a shared per-r table (thread-safe, lazily grown).
BigCount connected_count(int r, int64_t s, int64_t m, int threads = 0);
BigCount connected_count_by_nullity(int r, int64_t s, int64_t t, int threads = 0);

// Exhaustive oracle: enumerate all m-subsets of the binom(s,r) possible
// edges, count those covering [s] and connected. Refuses when
// binom(binom(s,r), m) exceeds 1e7.
BigCount brute_connected(int r, int64_t s, int64_t m);

// Selivanov: number of [a]-rooted r-forests on a+(r-1)k vertices,
//   F_{a,k} = a n^{k-1} (k(r-1))! / (k! (r-1)!^k).
BigCount forest_count(int r, int64_t a, int64_t k);

// (kt)!/(k! t!^k): partitions of a kt-set into k parts of size t.
BigCount partition_count(int64_t k, int64_t t);

}  // namespace hypercount
