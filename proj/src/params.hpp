#pragma once

#include <cstdint>

namespace hypercount {

// One instance of the random model H^r(n,p). lambda = p n^{r-1} / (r-2)! is
// the branching factor; the phase transition sits at lambda = 1.
struct ModelParams {
    int r = 2;
    int64_t n = 0;
    double p = 0.0;
    double lambda = 0.0;
    double eps = 0.0;  // lambda - 1

    static ModelParams from_p(int r, int64_t n, double p);
    static ModelParams from_lambda(int r, int64_t n, double lambda);
    static ModelParams from_eps(int r, int64_t n, double eps);
};

// Solved scalar parameters of the supercritical phase for a given (r, lambda):
//   1 - rho2     = exp(-lambda rho2)            (Poisson GW survival)
//   1 - rho      = (1 - rho2)^{1/(r-1)}         (giant order per vertex)
//   rho_star     = (lambda/r)(1-(1-rho)^r) - rho (giant nullity per vertex)
//   lambda_dual  = lambda (1 - rho2), the subcritical dual of lambda
struct RhoProfile {
    double lambda = 0.0;
    double rho2 = 0.0;
    double rho = 0.0;
    double rho_star = 0.0;
    double lambda_dual = 0.0;
};

// Enumeration-side parameters: connected r-uniform hypergraphs on s vertices
// with nullity t have m = (s+t-1)/(r-1) edges, and rho solves
// Psi_r(rho) = (t-1)/s.
struct EnumerationInstance {
    int r = 2;
    int64_t s = 0;
    int64_t t = 0;
    int64_t m = 0;
    double rho = 0.0;
};

// Psi_r(x) = -((r-1)/r) (log(1-x)/x) (1-(1-x)^r)/(1-(1-x)^{r-1}) - 1,
// strictly increasing from 0 to infinity on (0,1). Below rho = 1e-4 the
// direct form loses ~7 digits to cancellation, so a truncated power series
// takes over; the two branches agree to well under 1e-10 at the switch.
double psi_r(int r, double rho);

EnumerationInstance solve_rho(int r, int64_t s, int64_t t);
RhoProfile rho_profile(int r, double lambda);

struct Sigmas {
    double sigma_n = 0.0;       // sd of the giant order, sqrt(2n/eps)
    double sigma_star = 0.0;    // sd of the giant nullity, sqrt(10/3)/(r-1) sqrt(eps^3 n)
};
Sigmas sigmas(const ModelParams& mp);

// n = floor(s/rho), lambda = -(r-1)log(1-rho)/(1-(1-rho)^{r-1}); the returned
// model has rho_{r,lambda} n = s + O(1) and rho*_{r,lambda} n = t + O(1).
ModelParams embed_enumeration(const EnumerationInstance& inst);

double factorial(int n);

}  // namespace hypercount
