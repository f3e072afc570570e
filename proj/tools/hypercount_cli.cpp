// Command-line front end over the hypercount C API.
//
// Subcommands: count, exact, forest, simulate, verify, crosscheck.
// Exit codes: 0 success, 1 domain/computation error, 2 usage error;
// `verify` and `crosscheck` exit nonzero when a gated check fails.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypercount.h"

namespace {

constexpr uint64_t kDefaultSeed = 1;  // fixed default, never time-based

struct ParamChoice {
    double eps = -1, lambda = -1, p = -1;

    int kind() const { return eps >= 0 ? HC_PARAM_EPS : (lambda >= 0 ? HC_PARAM_LAMBDA : HC_PARAM_P); }
    double value() const { return eps >= 0 ? eps : (lambda >= 0 ? lambda : p); }
    bool valid() const { return (eps >= 0) + (lambda >= 0) + (p >= 0) == 1; }
};

int fail(int) {
    std::cerr << "error: " << hc_last_error() << "\n";
    return 1;  // computation/domain errors; usage problems exit 2
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(1);
    }
    out << text;
}

std::string owned(char* s) {
    std::string out = s ? s : "";
    hc_string_free(s);
    return out;
}

int default_threads() {
    const char* env = std::getenv("HYPERCOUNT_THREADS");
    return env ? std::atoi(env) : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"connected hypergraph counts and H^r(n,p) experiments"};
    app.set_config("--config");
    app.require_subcommand(1);

    // ---- count
    auto* count = app.add_subcommand("count", "asymptotic log10 C_r(s,t) and log10 P_r(s,t)");
    int c_r = 3;
    int64_t c_s = 0, c_t = 0;
    std::string c_format = "csv", c_out;
    count->add_option("--r", c_r, "edge size")->required();
    count->add_option("--s", c_s, "vertex count")->required();
    count->add_option("--t", c_t, "nullity")->required();
    count->add_option("--format", c_format)->check(CLI::IsMember({"csv", "json"}));
    count->add_option("--out", c_out, "output path (default stdout)");

    // ---- exact
    auto* exact = app.add_subcommand("exact", "exact big-integer connected counts");
    int e_r = 2;
    int64_t e_s = 0, e_t = -1, e_m = -1;
    bool e_brute = false;
    std::string e_out;
    exact->add_option("--r", e_r)->required();
    exact->add_option("--s", e_s)->required();
    exact->add_option("--t", e_t, "nullity (or use --m)");
    exact->add_option("--m", e_m, "edge count (or use --t)");
    exact->add_flag("--brute", e_brute, "cross-check against exhaustive enumeration");
    exact->add_option("--out", e_out);

    // ---- forest
    auto* forest = app.add_subcommand("forest", "rooted forest samples and pmfs");
    int f_r = 3;
    int64_t f_a = 1, f_k = 0, f_samples = 1, f_m = -1, f_iso = -1;
    double f_pi = -1, f_core_pairs = -1;
    uint64_t f_seed = kDefaultSeed;
    std::string f_pmf, f_out;
    forest->add_option("--r", f_r)->required();
    forest->add_option("--roots", f_a, "number of roots a");
    forest->add_option("--edges", f_k, "number of edges k");
    forest->add_option("--samples", f_samples);
    forest->add_option("--seed", f_seed);
    forest->add_option("--pmf", f_pmf, "smoothing|pendant: emit a pmf instead of samples")
        ->check(CLI::IsMember({"smoothing", "pendant"}));
    forest->add_option("--m", f_m, "smoothing pmf: total edge count");
    forest->add_option("--a", f_a, "smoothing pmf: half the root count");
    forest->add_option("--isolated", f_iso, "pendant pmf: |I'|");
    forest->add_option("--core-pairs", f_core_pairs, "pendant pmf: binom(|C|,2)");
    forest->add_option("--pi", f_pi, "pendant pmf: odds p2/(1-p2)");
    forest->add_option("--out", f_out);

    // ---- simulate
    auto* sim = app.add_subcommand("simulate", "H^r(n,p) trials to CSV");
    int s_r = 3, s_threads = default_threads();
    int64_t s_n = 0, s_trials = 100;
    ParamChoice s_par;
    uint64_t s_seed = kDefaultSeed;
    bool s_graph = false;
    std::string s_out;
    sim->add_option("--r", s_r)->required();
    sim->add_option("--n", s_n)->required();
    sim->add_option("--eps", s_par.eps, "eps = lambda - 1");
    sim->add_option("--lambda", s_par.lambda, "branching factor");
    sim->add_option("--p", s_par.p, "edge probability");
    sim->add_option("--trials", s_trials);
    sim->add_option("--seed", s_seed);
    sim->add_option("--threads", s_threads, "0 = hardware");
    sim->add_flag("--emit-graph", s_graph, "write one sample as an edge list instead");
    sim->add_option("--out", s_out);

    // ---- verify
    auto* ver = app.add_subcommand("verify", "statistical checks against theory (JSON)");
    int v_r = 3, v_threads = default_threads();
    int64_t v_n = 0, v_trials = 10000;
    ParamChoice v_par;
    uint64_t v_seed = kDefaultSeed;
    std::string v_out, v_hist;
    ver->add_option("--r", v_r)->required();
    ver->add_option("--n", v_n)->required();
    ver->add_option("--eps", v_par.eps);
    ver->add_option("--lambda", v_par.lambda);
    ver->add_option("--p", v_par.p);
    ver->add_option("--trials", v_trials);
    ver->add_option("--seed", v_seed);
    ver->add_option("--threads", v_threads);
    ver->add_option("--out", v_out, "JSON report path (default stdout)");
    ver->add_option("--hist", v_hist, "standardized histogram CSV path");

    // ---- crosscheck
    auto* cc = app.add_subcommand("crosscheck", "reproduce the published-formula comparisons");
    std::string cc_family = "all", cc_out_dir;
    int cc_d = 3, cc_per_decade = 4;
    double cc_rho_max = 0.1, cc_rho_min = 1e-4;
    cc->add_option("--family", cc_family)
        ->check(CLI::IsMember({"all", "bck", "bcok", "sw", "kl"}));
    cc->add_option("--d", cc_d, "edge size for bcok/kl");
    cc->add_option("--rho-max", cc_rho_max);
    cc->add_option("--rho-min", cc_rho_min);
    cc->add_option("--per-decade", cc_per_decade);
    cc->add_option("--out-dir", cc_out_dir, "write one CSV per family here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (count->parsed()) {
        double l10c, l10p, rho;
        int64_t m;
        int rc = hc_log_count(c_r, c_s, c_t, &l10c, &l10p, &rho, &m);
        if (rc != HC_OK) return fail(rc);
        char buf[512];
        if (c_format == "json")
            snprintf(buf, sizeof buf,
                     "{\"r\":%d,\"s\":%" PRId64 ",\"t\":%" PRId64 ",\"m\":%" PRId64
                     ",\"rho\":%.17g,\"log10_C\":%.17g,\"log10_P\":%.17g}\n",
                     c_r, c_s, c_t, m, rho, l10c, l10p);
        else
            snprintf(buf, sizeof buf,
                     "r,s,t,m,rho,log10_C,log10_P\n%d,%" PRId64 ",%" PRId64 ",%" PRId64
                     ",%.17g,%.17g,%.17g\n",
                     c_r, c_s, c_t, m, rho, l10c, l10p);
        emit(buf, c_out);
        return 0;
    }

    if (exact->parsed()) {
        if ((e_t >= 0) == (e_m >= 0)) {
            std::cerr << "error: give exactly one of --t or --m\n";
            return 2;
        }
        hc_exact* tab = hc_exact_new(e_r, default_threads());
        if (!tab) return fail(HC_ERR_DOMAIN);
        int64_t m = e_m >= 0 ? e_m : (e_s + e_t - 1) / (e_r - 1);
        int64_t t = e_t >= 0 ? e_t : 1 + (e_r - 1) * e_m - e_s;
        char* dec = nullptr;
        int rc = e_t >= 0 ? hc_exact_connected_by_nullity(tab, e_s, e_t, &dec)
                          : hc_exact_connected_count(tab, e_s, e_m, &dec);
        if (rc != HC_OK) {
            hc_exact_free(tab);
            return fail(rc);
        }
        std::string count_str = owned(dec);
        double lg10 = 0.0;
        if (count_str != "0") {
            hc_exact_log_connected(tab, e_s, m, &lg10);
            lg10 /= std::log(10.0);
        }
        std::string text = "r,s,m,t,count,log10count\n" + std::to_string(e_r) + "," +
                           std::to_string(e_s) + "," + std::to_string(m) + "," +
                           std::to_string(t) + "," + count_str + ",";
        char nb[64];
        snprintf(nb, sizeof nb, "%.17g\n", lg10);
        text += nb;
        if (e_brute) {
            char* bd = nullptr;
            rc = hc_brute_connected(e_r, e_s, m, &bd);
            if (rc != HC_OK) {
                hc_exact_free(tab);
                return fail(rc);
            }
            std::string brute = owned(bd);
            text += "brute," + brute + "," + (brute == count_str ? "match" : "MISMATCH") + "\n";
            if (brute != count_str) {
                emit(text, e_out);
                hc_exact_free(tab);
                return 1;
            }
        }
        emit(text, e_out);
        hc_exact_free(tab);
        return 0;
    }

    if (forest->parsed()) {
        if (f_pmf == "smoothing") {
            if (f_m < 0) {
                std::cerr << "error: smoothing pmf needs --m\n";
                return 2;
            }
            hc_pmf* pmf = nullptr;
            int rc = hc_smoothing_pmf(f_r, f_m, f_a, &pmf);
            if (rc != HC_OK) return fail(rc);
            std::string text = "k,p_k\n";
            char buf[64];
            for (size_t i = 0; i < hc_pmf_size(pmf); i++) {
                snprintf(buf, sizeof buf, "%" PRId64 ",%.17g\n", hc_pmf_lo(pmf) + (int64_t)i,
                         hc_pmf_prob(pmf, hc_pmf_lo(pmf) + (int64_t)i));
                text += buf;
            }
            hc_pmf_free(pmf);
            emit(text, f_out);
            return 0;
        }
        if (f_pmf == "pendant") {
            if (f_iso < 0 || f_core_pairs < 0 || f_pi < 0) {
                std::cerr << "error: pendant pmf needs --isolated, --core-pairs, --pi\n";
                return 2;
            }
            hc_pmf* pmf = nullptr;
            int rc = hc_pendant_reattach_pmf(f_r, f_iso, f_core_pairs, f_pi, &pmf);
            if (rc != HC_OK) return fail(rc);
            std::string text = "a,p_a\n";
            char buf[64];
            for (size_t i = 0; i < hc_pmf_size(pmf); i++) {
                snprintf(buf, sizeof buf, "%" PRId64 ",%.17g\n", hc_pmf_lo(pmf) + (int64_t)i,
                         hc_pmf_prob(pmf, hc_pmf_lo(pmf) + (int64_t)i));
                text += buf;
            }
            hc_pmf_free(pmf);
            emit(text, f_out);
            return 0;
        }
        std::string text;
        for (int64_t i = 0; i < f_samples; i++) {
            hc_forest* fr = nullptr;
            int rc = hc_sample_forest(f_r, f_a, f_k, f_seed + (uint64_t)i, &fr);
            if (rc != HC_OK) return fail(rc);
            char* el = nullptr;
            hc_forest_edge_list(fr, &el);
            text += owned(el);
            text += "\n";
            hc_forest_free(fr);
        }
        emit(text, f_out);
        return 0;
    }

    if (sim->parsed()) {
        if (!s_par.valid()) {
            std::cerr << "error: give exactly one of --eps, --lambda, --p\n";
            return 2;
        }
        if (s_graph) {
            char* text = nullptr;
            int rc = hc_sample_edge_list(s_r, s_n, s_par.kind(), s_par.value(), s_seed, &text);
            if (rc != HC_OK) return fail(rc);
            emit(owned(text), s_out);
            return 0;
        }
        hc_batch* b = nullptr;
        int rc = hc_simulate(s_r, s_n, s_par.kind(), s_par.value(), s_trials, s_seed, s_threads, &b);
        if (rc != HC_OK) return fail(rc);
        char* csv = nullptr;
        hc_batch_csv(b, &csv);
        emit(owned(csv), s_out);
        hc_batch_free(b);
        return 0;
    }

    if (ver->parsed()) {
        if (!v_par.valid()) {
            std::cerr << "error: give exactly one of --eps, --lambda, --p\n";
            return 2;
        }
        hc_batch* b = nullptr;
        int rc = hc_simulate(v_r, v_n, v_par.kind(), v_par.value(), v_trials, v_seed, v_threads, &b);
        if (rc != HC_OK) return fail(rc);
        char* json = nullptr;
        char* hist = nullptr;
        int all_pass = 0;
        rc = hc_verify(b, &json, &hist, &all_pass);
        hc_batch_free(b);
        if (rc != HC_OK) return fail(rc);
        emit(owned(json) + "\n", v_out);
        if (!v_hist.empty()) emit(owned(hist), v_hist);
        else hc_string_free(hist);
        return all_pass ? 0 : 1;
    }

    if (cc->parsed()) {
        struct Fam {
            std::string name;
            int family;
            int d;
            double rho_min;
        };
        std::vector<Fam> fams;
        if (cc_family == "all" || cc_family == "bck")
            fams.push_back({"bck_a", HC_SWEEP_BCK_A, 2, cc_rho_min});
        if (cc_family == "all" || cc_family == "bcok") {
            fams.push_back({"bcok_preprint", HC_SWEEP_BCOK_PREPRINT, cc_d, std::max(cc_rho_min, 1e-3)});
            fams.push_back({"bcok_published", HC_SWEEP_BCOK_PUBLISHED, cc_d, std::max(cc_rho_min, 1e-3)});
        }
        if (cc_family == "all" || cc_family == "sw")
            fams.push_back({"sw_identity", HC_SWEEP_SW, 3, std::max(cc_rho_min, 1e-2)});
        if (cc_family == "all" || cc_family == "kl")
            fams.push_back({"kl_discrepancy", HC_SWEEP_KL, cc_d, std::max(cc_rho_min, 1e-3)});
        bool all_ok = true;
        for (const auto& fam : fams) {
            char* csv = nullptr;
            double limit = 0;
            int ok = 0;
            int rc = hc_crosscheck(fam.family, fam.d, cc_rho_max, fam.rho_min, cc_per_decade,
                                   &csv, &limit, &ok);
            if (rc != HC_OK) return fail(rc);
            printf("%-16s limit %.12g  %s\n", fam.name.c_str(), limit, ok ? "ok" : "FAIL");
            if (!cc_out_dir.empty()) emit(owned(csv), cc_out_dir + "/" + fam.name + ".csv");
            else hc_string_free(csv);
            all_ok = all_ok && ok;
        }
        return all_ok ? 0 : 1;
    }

    return 2;
}
