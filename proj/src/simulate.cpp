#include "simulate.hpp"

#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hypercount {

static TrialRecord one_trial(const SimConfig& cfg, double mark_prob, uint64_t trial,
                             std::vector<int64_t>* census_row) {
    Rng rng = Rng::for_stream(cfg.seed, trial);
    Hypergraph h = sample_hypergraph(cfg.mp.r, cfg.mp.n, cfg.mp.p, rng);
    if (mark_prob > 0.0) h = mark_vertices(h, mark_prob, rng);

    ComponentSummary cs = components(h);
    TrialRecord rec;
    rec.L1 = cs.L1;
    rec.M1 = cs.M1;
    rec.N1 = cs.N1;
    rec.L2 = cs.L2;
    rec.component_count = cs.component_count;
    rec.isolated_count = cs.isolated_count;
    for (int64_t c = 0; c < cs.component_count; c++) {
        if (c == cs.giant_index) continue;
        const auto& ci = cs.components[(size_t)c];
        if (ci.nullity >= 2) rec.residual_complex++;
        rec.residual_pairs += (uint64_t)ci.order * (uint64_t)ci.order;
    }
    if (census_row) {
        census_row->assign((size_t)cfg.census_cap + 1, 0);
        for (const auto& ci : cs.components)
            if (ci.nullity == 0 && ci.size <= cfg.census_cap) (*census_row)[(size_t)ci.size]++;
    }
    if (cfg.peel_cores) {
        rec.core_size = (int64_t)core_of(h).vertices.size();
        if (!h.marks) h.marks = std::vector<uint32_t>{};
        rec.excore_size = (int64_t)extended_core_of(h).vertices.size();
    }
    return rec;
}

TrialBatch run_trials(const SimConfig& cfg) {
    if (cfg.trials < 1) throw std::domain_error("run_trials: need at least one trial");
    // fail in the calling thread, not inside a worker
    if (!(cfg.mp.p >= 0.0 && cfg.mp.p < 1.0))
        throw std::domain_error("run_trials: edge probability outside [0,1)");
    rank_space(cfg.mp.r, cfg.mp.n);  // throws when binom(n,r) overflows the guard
    TrialBatch batch;
    batch.cfg = cfg;
    double mark_prob = cfg.mark_prob;
    if (mark_prob < 0.0)
        mark_prob = cfg.mp.eps > 0.0 ? cfg.mp.eps * cfg.mp.eps / (100.0 * cfg.mp.r) : 0.0;
    batch.mark_prob_used = mark_prob;
    batch.rows.resize((size_t)cfg.trials);
    if (cfg.collect_census) batch.census.resize((size_t)cfg.trials);

    int threads = cfg.threads > 0 ? cfg.threads
                                  : (int)std::max(1u, std::thread::hardware_concurrency());
    threads = (int)std::min<int64_t>(threads, cfg.trials);
    std::atomic<int64_t> next{0};
    auto worker = [&] {
        while (true) {
            int64_t i = next.fetch_add(1);
            if (i >= cfg.trials) break;
            batch.rows[(size_t)i] = one_trial(cfg, mark_prob, (uint64_t)i,
                                              cfg.collect_census ? &batch.census[(size_t)i] : nullptr);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; t++) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return batch;
}

std::string TrialBatch::csv() const {
    std::ostringstream os;
    os << "L1,M1,N1,L2,core_size,excore_size\n";
    for (const auto& r : rows)
        os << r.L1 << ',' << r.M1 << ',' << r.N1 << ',' << r.L2 << ',' << r.core_size << ','
           << r.excore_size << '\n';
    return os.str();
}

}  // namespace hypercount
