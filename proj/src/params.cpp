#include "params.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hypercount {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; i++) f *= i;
    return f;
}

static void check_r(int r) {
    if (r < 2) throw std::domain_error("edge size r must be >= 2");
}

ModelParams ModelParams::from_p(int r, int64_t n, double p) {
    check_r(r);
    if (n < r) throw std::domain_error("vertex count n must be >= r");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("edge probability p outside [0,1]");
    ModelParams mp;
    mp.r = r;
    mp.n = n;
    mp.p = p;
    mp.lambda = p * std::pow((double)n, r - 1) / factorial(r - 2);
    mp.eps = mp.lambda - 1.0;
    return mp;
}

ModelParams ModelParams::from_lambda(int r, int64_t n, double lambda) {
    check_r(r);
    if (n < r) throw std::domain_error("vertex count n must be >= r");
    if (!(lambda > 0.0)) throw std::domain_error("branching factor lambda must be > 0");
    ModelParams mp;
    mp.r = r;
    mp.n = n;
    mp.lambda = lambda;
    mp.eps = lambda - 1.0;
    mp.p = lambda * factorial(r - 2) / std::pow((double)n, r - 1);
    return mp;
}

ModelParams ModelParams::from_eps(int r, int64_t n, double eps) {
    return from_lambda(r, n, 1.0 + eps);
}

// ---------------------------------------------------------------------------
// Psi_r

static double psi_direct(int r, double rho) {
    double L = std::log1p(-rho);                   // log(1-rho)
    double a_r = -std::expm1(r * L);               // 1-(1-rho)^r
    double a_r1 = -std::expm1((r - 1) * L);        // 1-(1-rho)^{r-1}
    return -((double)(r - 1) / r) * (L / rho) * (a_r / a_r1) - 1.0;
}

// Coefficients of Psi_r as a power series in rho, derived at runtime by
// truncated series arithmetic from
//   u(x)   = -log(1-x)/x          = sum x^i/(i+1)
//   A_j(x) = (1-(1-x)^j)/x        = sum_{i} (-1)^i C(j,i+1) x^i
//   Psi_r  = ((r-1)/r) u A_r/A_{r-1} - 1.
// The constant term cancels exactly; evaluation skips it.
namespace {
constexpr int kSeriesLen = 12;

struct PsiSeries {
    std::array<double, kSeriesLen> c{};  // c[i] multiplies rho^i, i >= 1

    explicit PsiSeries(int r) {
        std::array<double, kSeriesLen> u{}, ar{}, br{}, q{}, p{};
        for (int i = 0; i < kSeriesLen; i++) u[i] = 1.0 / (i + 1);
        auto binom = [](int n, int k) -> double {
            if (k < 0 || k > n) return 0.0;
            double v = 1.0;
            for (int j = 1; j <= k; j++) v = v * (n - k + j) / j;
            return v;
        };
        for (int i = 0; i < kSeriesLen; i++) {
            ar[i] = ((i & 1) ? -1.0 : 1.0) * binom(r, i + 1);
            br[i] = ((i & 1) ? -1.0 : 1.0) * binom(r - 1, i + 1);
        }
        // q = ar / br  (triangular solve; br[0] = r-1 > 0)
        for (int i = 0; i < kSeriesLen; i++) {
            double acc = ar[i];
            for (int j = 1; j <= i; j++) acc -= br[j] * q[i - j];
            q[i] = acc / br[0];
        }
        // p = ((r-1)/r) * u * q
        double scale = (double)(r - 1) / r;
        for (int i = 0; i < kSeriesLen; i++) {
            double acc = 0.0;
            for (int j = 0; j <= i; j++) acc += u[j] * q[i - j];
            p[i] = scale * acc;
        }
        // p[0] == 1 analytically; drop it rather than subtracting.
        c[0] = 0.0;
        for (int i = 1; i < kSeriesLen; i++) c[i] = p[i];
    }

    double eval(double rho) const {
        double acc = 0.0;
        for (int i = kSeriesLen - 1; i >= 1; i--) acc = (acc + c[i]) * rho;
        return acc;
    }
};
}  // namespace

static const PsiSeries& psi_series_for(int r) {
    // r is small in practice; cache a handful, build on demand otherwise.
    static const std::array<PsiSeries, 9> cache = {
        PsiSeries(2), PsiSeries(2), PsiSeries(2), PsiSeries(3), PsiSeries(4),
        PsiSeries(5), PsiSeries(6), PsiSeries(7), PsiSeries(8)};
    if (r >= 2 && r <= 8) return cache[r];
    thread_local PsiSeries big(2);
    thread_local int big_r = 2;
    if (big_r != r) {
        big = PsiSeries(r);
        big_r = r;
    }
    return big;
}

constexpr double kPsiSeriesSwitch = 1e-4;

double psi_r(int r, double rho) {
    check_r(r);
    if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("psi_r: rho outside (0,1)");
    if (rho < kPsiSeriesSwitch) return psi_series_for(r).eval(rho);
    return psi_direct(r, rho);
}

// ---------------------------------------------------------------------------
// root finding: plain bisection, fixed 200 iterations

template <typename F>
static double bisect(F&& f, double lo, double hi) {
    for (int i = 0; i < 200; i++) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

EnumerationInstance solve_rho(int r, int64_t s, int64_t t) {
    check_r(r);
    if (s < r) throw std::domain_error("solve_rho: need s >= r");
    if (t < 2) throw std::domain_error("solve_rho: nullity t must be >= 2");
    if ((s + t - 1) % (r - 1) != 0)
        throw std::invalid_argument("no-such-hypergraph: r-1 does not divide s+t-1");
    EnumerationInstance inst;
    inst.r = r;
    inst.s = s;
    inst.t = t;
    inst.m = (s + t - 1) / (r - 1);
    const double target = (double)(t - 1) / (double)s;
    inst.rho = bisect([&](double x) { return psi_r(r, x) - target; }, 1e-300, 1.0 - 1e-16);
    return inst;
}

RhoProfile rho_profile(int r, double lambda) {
    check_r(r);
    if (!(lambda > 1.0)) throw std::domain_error("rho_profile: requires lambda > 1");
    RhoProfile pr;
    pr.lambda = lambda;
    // g(x) = 1 - x - exp(-lambda x), positive left of the root
    pr.rho2 = bisect([&](double x) { return -(-x - std::expm1(-lambda * x)); }, 1e-300, 1.0);
    pr.rho = r == 2 ? pr.rho2 : -std::expm1(std::log1p(-pr.rho2) / (r - 1));
    // rho* = rho Psi_r(rho): algebraically equal to (lambda/r)(1-(1-rho)^r) - rho
    // but free of the eps^2-order cancellation of the direct form.
    pr.rho_star = pr.rho * psi_r(r, pr.rho);
    pr.lambda_dual = lambda * (1.0 - pr.rho2);
    return pr;
}

Sigmas sigmas(const ModelParams& mp) {
    if (!(mp.eps > 0.0)) throw std::domain_error("sigmas: requires eps > 0");
    Sigmas s;
    s.sigma_n = std::sqrt(2.0 * mp.n / mp.eps);
    s.sigma_star = std::sqrt(10.0 / 3.0) / (mp.r - 1) * std::sqrt(mp.eps * mp.eps * mp.eps * mp.n);
    return s;
}

ModelParams embed_enumeration(const EnumerationInstance& inst) {
    const double rho = inst.rho;
    int64_t n = (int64_t)std::floor((double)inst.s / rho);
    double L = std::log1p(-rho);
    double lambda = -(double)(inst.r - 1) * L / -std::expm1((inst.r - 1) * L);
    return ModelParams::from_lambda(inst.r, n, lambda);
}

}  // namespace hypercount
