#include "hypercount.h"

#include <cstring>
#include <new>
#include <numeric>
#include <string>

#include "asymptotics.hpp"
#include "crosscheck.hpp"
#include "exact.hpp"
#include "forests.hpp"
#include "hypergraph.hpp"
#include "params.hpp"
#include "simulate.hpp"
#include "verify.hpp"

using namespace hypercount;

namespace {

thread_local std::string g_error;

char* dup_string(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
int guarded(F&& f) {
    try {
        f();
        return HC_OK;
    } catch (const std::domain_error& e) {
        g_error = e.what();
        return g_error.find("refused") != std::string::npos ||
                       g_error.find("guard") != std::string::npos ||
                       g_error.find("refuses") != std::string::npos
                   ? HC_ERR_REFUSED
                   : HC_ERR_DOMAIN;
    } catch (const std::invalid_argument& e) {
        g_error = e.what();
        return HC_ERR_INVALID;
    } catch (const std::exception& e) {
        g_error = e.what();
        return HC_ERR_INTERNAL;
    }
}

ModelParams params_from(int r, int64_t n, int param_kind, double value) {
    switch (param_kind) {
        case HC_PARAM_EPS: return ModelParams::from_eps(r, n, value);
        case HC_PARAM_LAMBDA: return ModelParams::from_lambda(r, n, value);
        case HC_PARAM_P: return ModelParams::from_p(r, n, value);
    }
    throw std::invalid_argument("unknown parameter kind");
}

}  // namespace

extern "C" {

struct hc_exact {
    ConnectedCountTable table;
};
struct hc_pmf {
    DiscretePMF pmf;
};
struct hc_forest {
    RootedForest forest;
};
struct hc_batch {
    TrialBatch batch;
};

const char* hc_last_error(void) { return g_error.c_str(); }
void hc_string_free(char* s) { std::free(s); }

/* ------------------------------------------------------------------ params */

int hc_psi_r(int r, double rho, double* out) {
    return guarded([&] { *out = psi_r(r, rho); });
}

int hc_solve_rho(int r, int64_t s, int64_t t, double* rho, int64_t* m) {
    return guarded([&] {
        EnumerationInstance inst = solve_rho(r, s, t);
        if (rho) *rho = inst.rho;
        if (m) *m = inst.m;
    });
}

int hc_rho_profile(int r, double lambda, double out[4]) {
    return guarded([&] {
        RhoProfile pr = rho_profile(r, lambda);
        out[0] = pr.rho2;
        out[1] = pr.rho;
        out[2] = pr.rho_star;
        out[3] = pr.lambda_dual;
    });
}

int hc_sigmas(int r, int64_t n, double eps, double* sigma_n, double* sigma_star) {
    return guarded([&] {
        Sigmas s = sigmas(ModelParams::from_eps(r, n, eps));
        if (sigma_n) *sigma_n = s.sigma_n;
        if (sigma_star) *sigma_star = s.sigma_star;
    });
}

int hc_embed_enumeration(int r, int64_t s, int64_t t, int64_t* n, double* p, double* lambda) {
    return guarded([&] {
        ModelParams mp = embed_enumeration(solve_rho(r, s, t));
        if (n) *n = mp.n;
        if (p) *p = mp.p;
        if (lambda) *lambda = mp.lambda;
    });
}

/* ------------------------------------------------------------- asymptotics */

int hc_log_count(int r, int64_t s, int64_t t, double* log10_C, double* log10_P, double* rho,
                 int64_t* m) {
    return guarded([&] {
        EnumerationInstance inst = solve_rho(r, s, t);
        if (log10_C) *log10_C = log_C(inst).log10();
        if (log10_P) *log10_P = log_P(inst).log10();
        if (rho) *rho = inst.rho;
        if (m) *m = inst.m;
    });
}

int hc_density_f(double a, double b, double* out) {
    return guarded([&] { *out = density_f(a, b); });
}

int hc_llt_joint(int r, int64_t n, double eps, int64_t x, int64_t y, double* value,
                 int* on_lattice, int* asymptotic_ok) {
    return guarded([&] {
        LltValue v = llt_joint(GaussianLLT::from(ModelParams::from_eps(r, n, eps)), x, y);
        if (value) *value = v.value;
        if (on_lattice) *on_lattice = v.on_lattice ? 1 : 0;
        if (asymptotic_ok) *asymptotic_ok = v.asymptotic_ok ? 1 : 0;
    });
}

int hc_llt_l1(int r, int64_t n, double eps, int64_t x, double* value) {
    return guarded([&] {
        *value = llt_L1(GaussianLLT::from(ModelParams::from_eps(r, n, eps)), x).value;
    });
}

int hc_llt_n1(int r, int64_t n, double eps, int64_t t, double* value) {
    return guarded([&] {
        *value = llt_N1(GaussianLLT::from(ModelParams::from_eps(r, n, eps)), t).value;
    });
}

/* ------------------------------------------------------------------- exact */

hc_exact* hc_exact_new(int r, int threads) {
    hc_exact* tab = nullptr;
    int rc = guarded([&] { tab = new hc_exact{ConnectedCountTable(r, threads)}; });
    return rc == HC_OK ? tab : nullptr;
}

void hc_exact_free(hc_exact* tab) { delete tab; }

int hc_exact_connected_count(hc_exact* tab, int64_t s, int64_t m, char** decimal) {
    return guarded([&] { *decimal = dup_string(big_str(tab->table.count(s, m))); });
}

int hc_exact_connected_by_nullity(hc_exact* tab, int64_t s, int64_t t, char** decimal) {
    return guarded([&] {
        if (t < 0) throw std::domain_error("nullity must be >= 0");
        if ((s + t - 1) % (tab->table.r() - 1) != 0) {
            *decimal = dup_string("0");
            return;
        }
        *decimal = dup_string(big_str(tab->table.count(s, (s + t - 1) / (tab->table.r() - 1))));
    });
}

int hc_exact_log_connected(hc_exact* tab, int64_t s, int64_t m, double* log_value) {
    return guarded([&] { *log_value = big_log(tab->table.count(s, m)); });
}

int hc_total_hypergraphs(int r, int64_t a, int64_t b, char** decimal) {
    return guarded([&] { *decimal = dup_string(big_str(total_hypergraphs(r, a, b))); });
}

int hc_brute_connected(int r, int64_t s, int64_t m, char** decimal) {
    return guarded([&] { *decimal = dup_string(big_str(brute_connected(r, s, m))); });
}

int hc_forest_count(int r, int64_t a, int64_t k, char** decimal) {
    return guarded([&] { *decimal = dup_string(big_str(forest_count(r, a, k))); });
}

int hc_partition_count(int64_t k, int64_t t, char** decimal) {
    return guarded([&] { *decimal = dup_string(big_str(partition_count(k, t))); });
}

/* ----------------------------------------------------------------- forests */

int hc_smoothing_pmf(int r, int64_t m, int64_t a, hc_pmf** out) {
    return guarded([&] { *out = new hc_pmf{smoothing_pmf(r, m, a)}; });
}

int hc_pendant_reattach_pmf(int r, int64_t isolated, double core_pairs, double pi,
                            hc_pmf** out) {
    return guarded([&] { *out = new hc_pmf{pendant_reattach_pmf(r, isolated, core_pairs, pi)}; });
}

int64_t hc_pmf_lo(const hc_pmf* pmf) { return pmf->pmf.lo; }
size_t hc_pmf_size(const hc_pmf* pmf) { return pmf->pmf.probs.size(); }
double hc_pmf_prob(const hc_pmf* pmf, int64_t k) { return pmf->pmf.at(k); }
void hc_pmf_free(hc_pmf* pmf) { delete pmf; }

int hc_sample_forest(int r, int64_t a, int64_t k, uint64_t seed, hc_forest** out) {
    return guarded([&] {
        if (a < 1 || k < 0) throw std::domain_error("need a >= 1, k >= 0");
        std::vector<uint32_t> roots((size_t)a), nonroots((size_t)((r - 1) * k));
        std::iota(roots.begin(), roots.end(), 0u);
        std::iota(nonroots.begin(), nonroots.end(), (uint32_t)a);
        Rng rng(seed);
        *out = new hc_forest{sample_forest(r, roots, nonroots, rng)};
    });
}

int64_t hc_forest_edge_count(const hc_forest* f) { return (int64_t)f->forest.edges.size(); }

int hc_forest_edges(const hc_forest* f, uint32_t* edges, size_t cap) {
    return guarded([&] {
        size_t need = f->forest.edges.size() * (size_t)f->forest.r;
        if (cap < need) throw std::invalid_argument("edge buffer too small");
        size_t i = 0;
        for (const auto& e : f->forest.edges)
            for (uint32_t v : e) edges[i++] = v;
    });
}

int hc_forest_roundtrip(const hc_forest* f, int* ok) {
    return guarded([&] {
        ForestCode code = encode_forest(f->forest);
        std::vector<uint32_t> nonroots;
        for (uint32_t v : f->forest.vertices) {
            bool is_root = false;
            for (uint32_t rt : f->forest.roots) is_root |= rt == v;
            if (!is_root) nonroots.push_back(v);
        }
        RootedForest back = decode_forest(code, f->forest.roots, nonroots);
        auto canon = [](const RootedForest& x) {
            auto edges = x.edges;
            std::sort(edges.begin(), edges.end());
            return edges;
        };
        *ok = canon(back) == canon(f->forest) ? 1 : 0;
    });
}

int hc_forest_edge_list(const hc_forest* f, char** text) {
    return guarded([&] {
        Hypergraph h;
        h.r = f->forest.r;
        h.n = (int64_t)f->forest.vertices.size();
        for (const auto& e : f->forest.edges)
            for (uint32_t v : e) h.edges.push_back(v);
        *text = dup_string(write_edge_list(h));
    });
}

void hc_forest_free(hc_forest* f) { delete f; }

int hc_distance_expectation(int r, int64_t a, int64_t k, int64_t ell, double* out) {
    return guarded([&] { *out = distance_expectation(r, a, k, ell); });
}

/* ---------------------------------------------------------------- simulate */

int hc_simulate(int r, int64_t n, int param_kind, double param_value, int64_t trials,
                uint64_t seed, int threads, hc_batch** out) {
    return guarded([&] {
        SimConfig cfg;
        cfg.mp = params_from(r, n, param_kind, param_value);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.threads = threads;
        *out = new hc_batch{run_trials(cfg)};
    });
}

int64_t hc_batch_trials(const hc_batch* b) { return (int64_t)b->batch.rows.size(); }

int hc_batch_row(const hc_batch* b, int64_t trial, int64_t row[6]) {
    return guarded([&] {
        if (trial < 0 || trial >= (int64_t)b->batch.rows.size())
            throw std::invalid_argument("trial index out of range");
        const TrialRecord& r = b->batch.rows[(size_t)trial];
        row[0] = r.L1;
        row[1] = r.M1;
        row[2] = r.N1;
        row[3] = r.L2;
        row[4] = r.core_size;
        row[5] = r.excore_size;
    });
}

int hc_batch_csv(const hc_batch* b, char** csv) {
    return guarded([&] { *csv = dup_string(b->batch.csv()); });
}

int hc_verify(const hc_batch* b, char** json, char** histogram_csv, int* all_pass) {
    return guarded([&] {
        VerifyResult res = verify_batch(b->batch);
        if (json) *json = dup_string(res.json);
        if (histogram_csv) *histogram_csv = dup_string(res.histogram_csv);
        if (all_pass) *all_pass = res.all_pass ? 1 : 0;
    });
}

void hc_batch_free(hc_batch* b) { delete b; }

int hc_sample_edge_list(int r, int64_t n, int param_kind, double param_value, uint64_t seed,
                        char** text) {
    return guarded([&] {
        ModelParams mp = params_from(r, n, param_kind, param_value);
        Rng rng = Rng::for_stream(seed, 0);
        *text = dup_string(write_edge_list(sample_hypergraph(r, n, mp.p, rng)));
    });
}

int hc_expected_trees(int r, int64_t m, double p, int64_t k, double* out) {
    return guarded([&] { *out = expected_trees(r, m, p, k); });
}

int hc_expected_components_log10(hc_exact* tab, int64_t n, double p, int64_t s, int64_t t,
                                 double* log10_out) {
    return guarded([&] {
        int r = tab->table.r();
        if ((s + t - 1) % (r - 1) != 0)
            throw std::invalid_argument("no-such-hypergraph: r-1 does not divide s+t-1");
        LogReal logC = big_to_logreal(tab->table.count(s, (s + t - 1) / (r - 1)));
        *log10_out = expected_components(r, n, p, s, t, logC).log10();
    });
}

/* --------------------------------------------------------------- crosscheck */

int hc_crosscheck(int family, int d_or_r, double rho_max, double rho_min, int per_decade,
                  char** csv, double* limit, int* ok) {
    return guarded([&] {
        auto grid = log_grid(rho_max, rho_min, per_decade);
        LimitSweep sw;
        bool extra = false;
        switch (family) {
            case HC_SWEEP_BCK_A: sw = bck_a_sweep(grid); break;
            case HC_SWEEP_BCOK_PREPRINT: sw = bcok_limit(d_or_r, BcokVersion::preprint, grid); break;
            case HC_SWEEP_BCOK_PUBLISHED: sw = bcok_limit(d_or_r, BcokVersion::published, grid); break;
            case HC_SWEEP_SW: sw = sw_identity(grid); break;
            case HC_SWEEP_KL:
                sw = kl_discrepancy(d_or_r, grid);
                extra = true;
                break;
            default: throw std::invalid_argument("unknown sweep family");
        }
        if (csv) *csv = dup_string(sweep_csv(sw, extra));
        if (limit) *limit = sw.limit_estimate;
        if (ok) *ok = sw.ok ? 1 : 0;
    });
}

int hc_bck_log_p2(int64_t s, int64_t t, double* log_p2) {
    return guarded([&] { *log_p2 = bck_log_P2(s, t); });
}

} /* extern "C" */
