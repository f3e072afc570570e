#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypergraph.hpp"
#include "params.hpp"

namespace hypercount {

// What to run and what to record. Exactly one of eps/lambda/p is taken as
// given when built through make_sim_config; the stored ModelParams is final.
struct SimConfig {
    ModelParams mp;
    int64_t trials = 0;
    uint64_t seed = 1;
    int threads = 0;             // 0: hardware concurrency
    bool peel_cores = true;      // record core / extended-core sizes
    double mark_prob = -1.0;     // <0: eps^2/(100 r) when eps>0, else 0
    bool collect_census = false; // per-trial tree census up to census_cap
    int64_t census_cap = 16;
};

struct TrialRecord {
    int64_t L1 = 0, M1 = 0, N1 = 0, L2 = 0;
    int64_t core_size = 0, excore_size = 0;
    int64_t component_count = 0, isolated_count = 0;
    int64_t residual_complex = 0;       // complex components outside the giant
    uint64_t residual_pairs = 0;        // sum |C|^2 over non-giant components
};

// Reproducible batch: records are indexed by trial, each trial's generator is
// derived from (seed, trial index), so any thread count gives identical rows.
struct TrialBatch {
    SimConfig cfg;
    double mark_prob_used = 0.0;
    std::vector<TrialRecord> rows;
    std::vector<std::vector<int64_t>> census;  // rows x (census_cap+1), optional

    std::string csv() const;  // columns: L1,M1,N1,L2,core_size,excore_size
};

TrialBatch run_trials(const SimConfig& cfg);

}  // namespace hypercount
