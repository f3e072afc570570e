#pragma once

#include <string>
#include <vector>

#include "logreal.hpp"
#include "simulate.hpp"

namespace hypercount {

// Every statistical threshold used by the verification harness, in one place.
// Exact identities get tolerances; asymptotic statements get factor or
// percentage bands wide enough for the finite-size setting they are run at.
struct VerifyBands {
    double mean_L1_rel = 0.02;     // giant order mean vs rho n
    double var_L1_rel = 0.20;      // giant order variance vs 2n/eps
    double mean_N1_rel = 0.10;     // giant nullity mean vs rho* n
    double corr_abs = 0.06;        // corr(L1,N1) vs sqrt(3/5)
    double chi2_p_min = 0.001;     // 12x12 standardized histogram
    double mode_ratio_lo = 0.8;    // observed/predicted mass of the mode cell
    double mode_ratio_hi = 1.25;
    double ks_max = 0.02;          // L1-marginal KS distance at >= 1e4 trials
    double pmf_chi2_p_min = 0.01;  // sampled Y_{m,a} against the exact pmf
    double trees_se = 3.0;         // tree census vs mu_k, standard errors
    double trees_factor = 4.0;     // (k+1)^{5/2} mu_k / m band over k = 1..10
    double component_ratio_lo = 0.7;   // empirical Pr(L1=s,N1=t) / E[N_{s,t}]
    double component_ratio_hi = 1.4;
    double complex_residual_factor = 10.0;  // fraction < factor / (eps^3 n)
    double pairs_factor = 20.0;             // mean residual |C|^2 sum < factor n/eps
    double l2_tail_frac = 0.01;    // L2 > 20 eps^-2 log(eps^3 n) in < 1% of trials
};

inline const VerifyBands& default_bands() {
    static VerifyBands b;
    return b;
}

struct Check {
    std::string name;
    double predicted = 0.0;
    double observed = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
    bool gated = true;   // false: reported with no pass/fail meaning
    bool pass = true;
    std::string note;
};

struct MomentReport {
    std::vector<Check> checks;
    bool underpowered = false;  // trials < 1000 or eps^3 n < 100
};
MomentReport moment_report(const TrialBatch& batch, const VerifyBands& bands = default_bands());

struct HistogramReport {
    std::vector<Check> checks;
    double chi2 = 0.0;
    int dof = 0;
    double p_value = 0.0;
    std::string cells_csv;  // a_lo,a_hi,b_lo,b_hi,observed,expected
};
HistogramReport llt_histogram_test(const TrialBatch& batch,
                                   const VerifyBands& bands = default_bands());

// Exact expected number of tree components with k edges in H^r(m,p):
//   mu_k = binom(m, a) a^{k-1} partitions(k, r-1) p^k (1-p)^{t_{m,k}-k},
// a = k(r-1)+1, t_{m,k} = binom(m,r) - binom(m-a, r). Log-space evaluation.
double expected_trees(int r, int64_t m, double p, int64_t k);

// E[N_{s,t}] = binom(n,s) C_r(s,t) p^m (1-p)^{binom(n,r)-binom(n-s,r)-m};
// the connected count enters through its log (exact or asymptotic).
LogReal expected_components(int r, int64_t n, double p, int64_t s, int64_t t, LogReal logC);

std::vector<Check> rare_event_report(const TrialBatch& batch,
                                     const VerifyBands& bands = default_bands());

// Full harness: moments + histogram + rare events on one batch, JSON-encoded.
struct VerifyResult {
    std::vector<Check> checks;
    double chi2_p = 0.0;
    bool all_pass = true;
    std::string json;
    std::string histogram_csv;
};
VerifyResult verify_batch(const TrialBatch& batch, const VerifyBands& bands = default_bands());

}  // namespace hypercount
