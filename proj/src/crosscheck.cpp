#include "crosscheck.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "params.hpp"

namespace hypercount {

std::vector<double> log_grid(double rho_max, double rho_min, int per_decade) {
    if (!(rho_max > rho_min && rho_min > 0)) throw std::domain_error("log_grid: bad range");
    std::vector<double> g;
    const double step = std::pow(10.0, -1.0 / per_decade);
    for (double r = rho_max; r >= rho_min * (1 - 1e-12); r *= step) g.push_back(r);
    return g;
}

static double extrapolate_limit(const std::vector<SweepPoint>& pts,
                                double (*value)(const SweepPoint&)) {
    if (pts.size() < 3) throw std::domain_error("sweep: need at least three points");
    // quadratic fit through the three smallest-rho points, evaluated at 0;
    // kills the O(rho) and O(rho^2) error terms of these families
    const SweepPoint* p[3] = {&pts[pts.size() - 1], &pts[pts.size() - 2], &pts[pts.size() - 3]};
    double est = 0.0;
    for (int i = 0; i < 3; i++) {
        double li = 1.0;
        for (int j = 0; j < 3; j++)
            if (j != i) li *= -p[j]->rho / (p[i]->rho - p[j]->rho);
        est += value(*p[i]) * li;
    }
    return est;
}

// ---------------------------------------------------------------------------
// Bender-Canfield-McKay (r = 2)

double bck_y_of_x(double x) {
    if (!(x > 1.0)) throw std::domain_error("bck: x = m/s must exceed 1");
    double lo = 1e-300, hi = 1.0 - 1e-16;
    for (int i = 0; i < 200; i++) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double g = std::log1p(mid) - std::log1p(-mid) - 2.0 * x * mid;
        (g < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

static double bck_a_xy(double x, double y, double one_m_x) {
    // a(x) = x(x+1)(1-y) + log(1-x+xy) - (1/2) log(1-x+xy^2);
    // 1-x is passed separately because it is a tiny difference at small rho.
    return x * (x + 1.0) * (1.0 - y) + std::log(one_m_x + x * y) -
           0.5 * std::log(one_m_x + x * y * y);
}

double bck_a_of_rho(double rho) {
    const double psi = psi_r(2, rho);  // x - 1, cancellation-free
    const double x = 1.0 + psi;
    const double y = rho / (2.0 - rho);
    return bck_a_xy(x, y, -psi);
}

double bck_log_P2(int64_t s, int64_t t) {
    if (t < 2) throw std::domain_error("bck_log_P2: nullity t must be >= 2");
    const int64_t m = s + t - 1;
    if (m > s * (s - 1) / 2 - s)
        throw std::domain_error("bck_log_P2: m above binom(s,2) - s validity range");
    const double x = (double)m / (double)s;
    const double y = bck_y_of_x(x);
    double a = bck_a_xy(x, y, 1.0 - x);
    return a + (double)s *
                   (std::log(2.0) - x + (1.0 - x) * std::log(y) - 0.5 * std::log1p(-y * y));
}

LimitSweep bck_a_sweep(const std::vector<double>& grid) {
    LimitSweep sw;
    const double target = 2.0 + std::log(1.5) / 2.0;
    for (double rho : grid) {
        SweepPoint p;
        p.rho = rho;
        p.lhs = bck_a_of_rho(rho);
        p.rhs = target;
        p.diff = p.lhs - p.rhs;
        sw.pts.push_back(p);
    }
    sw.limit_estimate = extrapolate_limit(sw.pts, [](const SweepPoint& p) { return p.lhs; });
    sw.note = "a(x) -> 2 + log(3/2)/2";
    sw.ok = std::fabs(sw.limit_estimate - target) < 1e-6;
    return sw;
}

// ---------------------------------------------------------------------------
// Behrisch-Coja-Oghlan-Kang limits

double bcok_target(int d, BcokVersion version) {
    const double f_limit = std::sqrt(3.0 * (d - 1) / 2.0);
    switch (version) {
        case BcokVersion::preprint:
            return f_limit * std::exp(d / 2.0);  // c_d, with c_2 = e^2 sqrt(3/2)
        case BcokVersion::published:
            return d == 2 ? f_limit * std::exp(1.0) : f_limit;
    }
    throw std::logic_error("bcok_target: bad version");
}

double bcok_value(int d, BcokVersion version, double rho) {
    if (d < 2) throw std::domain_error("bcok_value: d must be >= 2");
    const double r = 1.0 - rho;
    // zeta(rho) = -(log(1-rho)/rho)(1-r^d)/(1-r^{d-1}) = (d/(d-1))(1+Psi_d)
    const double zeta = (double)d / (d - 1) * (1.0 + psi_r(d, rho));
    const double rd = std::pow(r, d);
    const double rdm1 = std::pow(r, d - 1);
    const double a_d = 1.0 - rd - (1.0 - r) * (d - 1) * zeta * rdm1;
    const double b_d = (1.0 - rd + zeta * (d - 1) * (r - rdm1)) * (1.0 - rd) -
                       d * zeta * r * (1.0 - rdm1) * (1.0 - rdm1);
    const double f_d = a_d / std::sqrt(b_d);
    double g_d;
    if (d == 2) {
        g_d = version == BcokVersion::preprint
                  ? (2.0 * zeta * r + zeta * zeta * r) / (2.0 * (1.0 + r))
                  : zeta * r * (2.0 - r - r * r + zeta) / (2.0 * (1.0 + r));
    } else {
        g_d = version == BcokVersion::preprint
                  ? zeta * (d - 1) * (r - 2.0 * rd + rdm1) / (2.0 * (1.0 - rd))
                  : (d - 1) * zeta * (r - r * r + rdm1 - 2.0 * rd + std::pow(r, d + 2)) /
                        (2.0 * (1.0 - rd));
    }
    return f_d * std::exp(g_d);
}

LimitSweep bcok_limit(int d, BcokVersion version, const std::vector<double>& grid) {
    if (d < 2) throw std::domain_error("bcok_limit: d must be >= 2");
    LimitSweep sw;
    for (double rho : grid) {
        SweepPoint p;
        p.rho = rho;
        p.lhs = bcok_value(d, version, rho);
        p.rhs = bcok_target(d, version);
        p.diff = p.lhs - p.rhs;
        sw.pts.push_back(p);
    }
    sw.limit_estimate = extrapolate_limit(sw.pts, [](const SweepPoint& p) { return p.lhs; });
    sw.note = version == BcokVersion::preprint ? "preprint g_d" : "published g_d";
    sw.ok = std::fabs(sw.limit_estimate - bcok_target(d, version)) <
            0.01 * bcok_target(d, version);
    return sw;
}

// ---------------------------------------------------------------------------
// Sato-Wormald (r = 3)

LimitSweep sw_identity(const std::vector<double>& grid) {
    LimitSweep sw;
    double worst = 0.0;
    for (double rho : grid) {
        const double mu = -std::log1p(-rho);
        const double emu = std::exp(mu);  // 1/(1-rho)
        const double x = 1.0 + 2.0 * std::log1p(-rho) * (1.0 - rho) * (1.0 - rho) /
                                   (rho * (2.0 - rho));  // n*
        const double psi3 = psi_r(3, rho);
        const double rn = psi3 / 2.0;       // R/N
        const double ms = (1.0 + psi3) / 2.0;  // m/s
        const double phit = -(1.0 - x) / 2.0 * std::log(1.0 - x) + (1.0 - x) / 2.0 -
                            (std::log(2.0) + 2.0) * rn - std::log(2.0) / 2.0 * x +
                            rn * std::log((emu + 1.0) / (mu * (emu - 1.0))) +
                            x / 2.0 * std::log((emu - 1.0) * (emu + 1.0) / mu) - 1.0;
        const double a3 = -std::expm1(3.0 * std::log1p(-rho));
        const double logpsi = ms * (1.0 + std::log(a3) - std::log(6.0 * ms) -
                                    3.0 * std::log(rho)) +
                              std::log(rho) + (1.0 - rho) / rho * std::log1p(-rho);
        SweepPoint p;
        p.rho = rho;
        p.lhs = phit;
        p.rhs = logpsi;
        p.diff = phit - logpsi;
        worst = std::max(worst, std::fabs(p.diff));
        sw.pts.push_back(p);
    }
    sw.limit_estimate = worst;
    sw.ok = worst < 1e-9;
    sw.note = "max |phi~(n*) - log psi|";
    return sw;
}

// ---------------------------------------------------------------------------
// Karonski-Luczak discrepancy: long double internally, the difference is
// Theta(rho^4) and sits ~4 digits under the O(1) terms at rho = 1e-3.

static long double psi_ld(int r, long double rho) {
    long double L = std::log1p(-rho);
    long double ar = -std::expm1(r * L);
    long double ar1 = -std::expm1((r - 1) * L);
    return -((long double)(r - 1) / r) * (L / rho) * ar / ar1 - 1.0L;
}

LimitSweep kl_discrepancy(int r, const std::vector<double>& grid) {
    if (r < 2) throw std::domain_error("kl_discrepancy: r must be >= 2");
    LimitSweep sw;
    for (double rho_d : grid) {
        const long double rho = rho_d;
        const long double K = psi_ld(r, rho);  // k/s
        const long double a_r = -std::expm1(r * std::log1p(-rho));
        const long double f = a_r / (r * rho);
        const long double tau = rho * std::sqrt((long double)(r - 1) / (12.0L * K));
        const long double lhs = (2.0L - r) + (r - 1) * K / 2.0L;
        const long double rhs = (1.0L + K) * (1.0L + std::log(f) - std::log1p(K)) +
                                (r - 1) * ((1.0L - rho) / rho) * std::log1p(-rho) -
                                (r - 1) * K * std::log(tau);
        SweepPoint p;
        p.rho = rho_d;
        p.lhs = (double)lhs;
        p.rhs = (double)rhs;
        p.diff = (double)(lhs - rhs);
        p.extra = (double)((lhs - rhs) / (rho * rho * rho * rho));
        sw.pts.push_back(p);
    }
    // stabilization: all ratios of one sign, max/min within a factor 3
    double lo = 0, hi = 0;
    bool first = true, same_sign = true;
    for (const auto& p : sw.pts) {
        double v = std::fabs(p.extra);
        if (p.extra == 0.0 || (sw.pts[0].extra > 0) != (p.extra > 0)) same_sign = false;
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    sw.limit_estimate = sw.pts.back().extra;
    sw.ok = same_sign && lo > 0 && hi / lo < 3.0;
    sw.note = "diff / rho^4";
    return sw;
}

std::string sweep_csv(const LimitSweep& sweep, bool with_extra) {
    std::ostringstream os;
    os << (with_extra ? "rho,lhs,rhs,diff,diff_rho4\n" : "rho,lhs,rhs,diff\n");
    char buf[256];
    for (const auto& p : sweep.pts) {
        if (with_extra)
            snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.rho, p.lhs, p.rhs,
                     p.diff, p.extra);
        else
            snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", p.rho, p.lhs, p.rhs, p.diff);
        os << buf;
    }
    return os.str();
}

}  // namespace hypercount
