#include "asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "mathx.hpp"

namespace hypercount {

static double per_vertex_log(double rho) {
    // log( rho (1-rho)^{(1-rho)/rho} )
    return std::log(rho) + (1.0 - rho) / rho * std::log1p(-rho);
}

LogReal log_C(const EnumerationInstance& inst) {
    if (inst.t < 2) throw std::domain_error("log_C: requires nullity t >= 2");
    const int r = inst.r;
    const double s = (double)inst.s, m = (double)inst.m, rho = inst.rho;
    const double a_r = -std::expm1(r * std::log1p(-rho));  // 1-(1-rho)^r
    KahanSum acc;
    acc.add(0.5 * std::log(3.0) - std::log(2.0) - 0.5 * std::log(M_PI));
    acc.add(std::log((double)(r - 1)));
    acc.add(-0.5 * std::log(s));
    acc.add(m * (1.0 + std::log(a_r) + r * std::log(s)));
    acc.add(-m * (std::log(m) + log_factorial(r) + r * std::log(rho)));
    acc.add(s * per_vertex_log(rho));
    return LogReal::from_log(acc.value());
}

LogReal log_P(const EnumerationInstance& inst) {
    if (inst.t < 2) throw std::domain_error("log_P: requires nullity t >= 2");
    const int r = inst.r;
    const double s = (double)inst.s, m = (double)inst.m, rho = inst.rho;
    const double a_r = -std::expm1(r * std::log1p(-rho));
    KahanSum acc;
    acc.add(r / 2.0 + (r == 2 ? 1.0 : 0.0));
    acc.add(0.5 * std::log(3.0 * (r - 1) / 2.0));
    acc.add(m * (std::log(a_r) - r * std::log(rho)));
    acc.add(s * per_vertex_log(rho));
    return LogReal::from_log(acc.value());
}

double density_f(double a, double b) {
    const double q = a * a - 2.0 * std::sqrt(3.0 / 5.0) * a * b + b * b;
    return std::exp(-1.25 * q) / (2.0 * M_PI * std::sqrt(0.4));
}

GaussianLLT GaussianLLT::from(const ModelParams& mp) {
    if (!(mp.eps > 0.0)) throw std::domain_error("GaussianLLT: requires eps > 0");
    RhoProfile pr = rho_profile(mp.r, mp.lambda);
    Sigmas sg = sigmas(mp);
    GaussianLLT g{mp.r,       mp.n,       mp.eps,       pr.rho * mp.n,
                  pr.rho_star * mp.n, sg.sigma_n, sg.sigma_star, std::sqrt(3.0 / 5.0)};
    return g;
}

static bool asymptotic_ok(const GaussianLLT& g) {
    return g.eps <= 0.5 && g.eps * g.eps * g.eps * (double)g.n >= 10.0;
}

LltValue llt_joint(const GaussianLLT& g, int64_t x, int64_t y) {
    LltValue out;
    const double a = (x - g.mu_L) / g.sigma_n;
    const double b = (y - g.mu_N) / g.sigma_star;
    const double q = a * a - 2.0 * g.correlation * a * b + b * b;
    out.value = std::sqrt(6.0) / (8.0 * M_PI) * (double)(g.r - 1) * (g.r - 1) /
                (g.eps * (double)g.n) * std::exp(-1.25 * q);
    out.on_lattice = ((x + y - 1) % (g.r - 1) + (g.r - 1)) % (g.r - 1) == 0;
    out.asymptotic_ok = asymptotic_ok(g);
    return out;
}

LltValue llt_L1(const GaussianLLT& g, int64_t x) {
    LltValue out;
    const double noe = (double)g.n / g.eps;
    const double d = (double)x - g.mu_L;
    out.value = std::exp(-d * d / (4.0 * noe)) / (2.0 * std::sqrt(M_PI * noe));
    out.asymptotic_ok = asymptotic_ok(g);
    return out;
}

LltValue llt_N1(const GaussianLLT& g, int64_t t) {
    LltValue out;
    const double d = (double)t - g.mu_N;
    out.value = std::exp(-d * d / (2.0 * g.sigma_star * g.sigma_star)) /
                (g.sigma_star * std::sqrt(2.0 * M_PI));
    out.asymptotic_ok = asymptotic_ok(g);
    return out;
}

}  // namespace hypercount
