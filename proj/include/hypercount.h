/* hypercount: connected r-uniform hypergraph counts, giant-component local
 * limits, exact oracles, and Monte Carlo verification of H^r(n,p).
 *
 * Plain C surface over the C++ core: opaque handles, integer status codes,
 * caller-owned output buffers released through the matching free functions.
 * All functions returning int give HC_OK (0) on success; on failure the
 * thread-local message from hc_last_error() describes the problem.
 *
 * Handles are not internally synchronized: share them read-only or guard
 * them externally. Batch simulation parallelizes internally and stays
 * deterministic for any thread count.
 */
#ifndef HYPERCOUNT_H
#define HYPERCOUNT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum hc_status {
    HC_OK = 0,
    HC_ERR_DOMAIN = 1,   /* argument outside the mathematical domain */
    HC_ERR_INVALID = 2,  /* malformed input (divisibility, structure, ...) */
    HC_ERR_REFUSED = 3,  /* guard tripped (size, overflow, trial floor) */
    HC_ERR_INTERNAL = 4
};

const char* hc_last_error(void);
void hc_string_free(char* s);

/* ------------------------------------------------------------------ params */

/* Psi_r(rho), strictly increasing on (0,1). */
int hc_psi_r(int r, double rho, double* out);

/* rho solving Psi_r(rho) = (t-1)/s; also yields m = (s+t-1)/(r-1). */
int hc_solve_rho(int r, int64_t s, int64_t t, double* rho, int64_t* m);

/* out[0]=rho_lambda, out[1]=rho_{r,lambda}, out[2]=rho*_{r,lambda},
 * out[3]=dual lambda*. Requires lambda > 1. */
int hc_rho_profile(int r, double lambda, double out[4]);

/* sd of giant order and nullity for eps = lambda-1 > 0. */
int hc_sigmas(int r, int64_t n, double eps, double* sigma_n, double* sigma_star);

/* Embedding n = floor(s/rho), p = lambda (r-2)! n^{1-r}. */
int hc_embed_enumeration(int r, int64_t s, int64_t t, int64_t* n, double* p, double* lambda);

/* ------------------------------------------------------------- asymptotics */

/* log10 of the asymptotic count C_r(s,t) and connectivity probability
 * P_r(s,t), plus the solved rho and edge count m. Requires t >= 2. */
int hc_log_count(int r, int64_t s, int64_t t, double* log10_C, double* log10_P, double* rho,
                 int64_t* m);

int hc_density_f(double a, double b, double* out);

/* Joint point probability Pr(L1=x, N1=y); on_lattice reports whether
 * x+y == 1 mod (r-1), asymptotic_ok whether eps <= 0.5 and eps^3 n >= 10.
 * Model given by (r, n) and eps = lambda - 1 > 0. */
int hc_llt_joint(int r, int64_t n, double eps, int64_t x, int64_t y, double* value,
                 int* on_lattice, int* asymptotic_ok);
int hc_llt_l1(int r, int64_t n, double eps, int64_t x, double* value);
int hc_llt_n1(int r, int64_t n, double eps, int64_t t, double* value);

/* ------------------------------------------------------------------- exact */

typedef struct hc_exact hc_exact; /* per-r connected-count table */

hc_exact* hc_exact_new(int r, int threads);
void hc_exact_free(hc_exact* tab);

/* Decimal strings; free with hc_string_free. */
int hc_exact_connected_count(hc_exact* tab, int64_t s, int64_t m, char** decimal);
int hc_exact_connected_by_nullity(hc_exact* tab, int64_t s, int64_t t, char** decimal);
int hc_exact_log_connected(hc_exact* tab, int64_t s, int64_t m, double* log_value);

int hc_total_hypergraphs(int r, int64_t a, int64_t b, char** decimal);
int hc_brute_connected(int r, int64_t s, int64_t m, char** decimal);
int hc_forest_count(int r, int64_t a, int64_t k, char** decimal);
int hc_partition_count(int64_t k, int64_t t, char** decimal);

/* ----------------------------------------------------------------- forests */

typedef struct hc_pmf hc_pmf;

int hc_smoothing_pmf(int r, int64_t m, int64_t a, hc_pmf** out);
int hc_pendant_reattach_pmf(int r, int64_t isolated, double core_pairs, double pi, hc_pmf** out);
int64_t hc_pmf_lo(const hc_pmf* pmf);
size_t hc_pmf_size(const hc_pmf* pmf);
double hc_pmf_prob(const hc_pmf* pmf, int64_t k);
void hc_pmf_free(hc_pmf* pmf);

typedef struct hc_forest hc_forest;

/* Uniform rooted forest on roots {0..a-1} and (r-1)k further vertices. */
int hc_sample_forest(int r, int64_t a, int64_t k, uint64_t seed, hc_forest** out);
int64_t hc_forest_edge_count(const hc_forest* f);
/* Copies r * edge_count vertex ids into `edges`. */
int hc_forest_edges(const hc_forest* f, uint32_t* edges, size_t cap);
/* encode-decode round trip; sets *ok to 1 when the forest survives intact. */
int hc_forest_roundtrip(const hc_forest* f, int* ok);
int hc_forest_edge_list(const hc_forest* f, char** text);
void hc_forest_free(hc_forest* f);

int hc_distance_expectation(int r, int64_t a, int64_t k, int64_t ell, double* out);

/* ---------------------------------------------------------------- simulate */

enum hc_param_kind { HC_PARAM_EPS = 0, HC_PARAM_LAMBDA = 1, HC_PARAM_P = 2 };

typedef struct hc_batch hc_batch;

/* Runs `trials` independent draws of H^r(n,p) with per-trial seeds derived
 * from (seed, trial index); identical output for any thread count. */
int hc_simulate(int r, int64_t n, int param_kind, double param_value, int64_t trials,
                uint64_t seed, int threads, hc_batch** out);
int64_t hc_batch_trials(const hc_batch* b);
/* row[0..5] = L1, M1, N1, L2, core_size, excore_size */
int hc_batch_row(const hc_batch* b, int64_t trial, int64_t row[6]);
int hc_batch_csv(const hc_batch* b, char** csv);

/* Verification report over a batch: JSON plus standardized histogram CSV.
 * all_pass reflects every gated check. */
int hc_verify(const hc_batch* b, char** json, char** histogram_csv, int* all_pass);
void hc_batch_free(hc_batch* b);

/* One hypergraph sample in the edge-list text format ("r n" header, one
 * sorted edge per line). */
int hc_sample_edge_list(int r, int64_t n, int param_kind, double param_value, uint64_t seed,
                        char** text);

/* E[number of tree components with k edges] in H^r(m,p). */
int hc_expected_trees(int r, int64_t m, double p, int64_t k, double* out);

/* log10 E[N_{s,t}] using the exact connected count from `tab`. */
int hc_expected_components_log10(hc_exact* tab, int64_t n, double p, int64_t s, int64_t t,
                                 double* log10_out);

/* --------------------------------------------------------------- crosscheck */

enum hc_sweep_family {
    HC_SWEEP_BCK_A = 0,        /* a(x) -> 2 + log(3/2)/2 */
    HC_SWEEP_BCOK_PREPRINT = 1,
    HC_SWEEP_BCOK_PUBLISHED = 2,
    HC_SWEEP_SW = 3,           /* phi~(n*) == log psi, r = 3 */
    HC_SWEEP_KL = 4            /* diff/rho^4 stabilization */
};

/* Evaluates one family over a log grid [rho_min, rho_max]; csv gets the
 * per-point table, limit the extrapolated limit (or max |diff| for SW),
 * ok the family's own convergence verdict. d_or_r is the edge size for
 * the BC-OK and KL families, ignored otherwise. */
int hc_crosscheck(int family, int d_or_r, double rho_max, double rho_min, int per_decade,
                  char** csv, double* limit, int* ok);

int hc_bck_log_p2(int64_t s, int64_t t, double* log_p2);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HYPERCOUNT_H */
