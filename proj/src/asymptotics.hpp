#pragma once

#include "logreal.hpp"
#include "params.hpp"

namespace hypercount {

// Asymptotic count of connected r-uniform hypergraphs on s vertices with
// nullity t (m = (s+t-1)/(r-1) edges, rho solving Psi_r(rho) = (t-1)/s):
//   C ~ (sqrt3 / 2 sqrt pi) ((r-1)/sqrt s)
//       ( e (1-(1-rho)^r) s^r / (m r! rho^r) )^m  ( rho (1-rho)^{(1-rho)/rho} )^s.
// Valid as an equivalence for t -> infinity, t = o(s); evaluated in log space.
LogReal log_C(const EnumerationInstance& inst);

// Asymptotic probability that a uniform m-edge hypergraph on [s] is connected:
//   P ~ e^{r/2 + [r=2]} sqrt(3(r-1)/2) ((1-(1-rho)^r)/rho^r)^m
//       ( rho (1-rho)^{(1-rho)/rho} )^s.
// Not clamped at 1: at small s the asymptotic form may exceed 1.
LogReal log_P(const EnumerationInstance& inst);

// Standardized bivariate density of the (order, nullity) fluctuations:
// f(a,b) = exp(-(5/4)(a^2 - 2 sqrt(3/5) ab + b^2)) / (2 pi sqrt(2/5)).
double density_f(double a, double b);

// Local-limit evaluation context for one model instance.
struct GaussianLLT {
    int r;
    int64_t n;
    double eps;
    double mu_L;         // rho_{r,lambda} n
    double mu_N;         // rho*_{r,lambda} n
    double sigma_n;      // sqrt(2n/eps)
    double sigma_star;   // sqrt(10/3) (r-1)^{-1} sqrt(eps^3 n)
    double correlation;  // sqrt(3/5)

    static GaussianLLT from(const ModelParams& mp);
};

struct LltValue {
    double value = 0.0;
    bool on_lattice = true;      // joint only: x + y == 1 mod (r-1)
    bool asymptotic_ok = true;   // eps <= 0.5 and eps^3 n >= 10
};

// Pr(L1 = x, N1 = y) ~ (sqrt6/8pi) (r-1)^2/(eps n) exp(-(5/4)(a^2-2sqrt(3/5)ab+b^2)).
LltValue llt_joint(const GaussianLLT& g, int64_t x, int64_t y);
// Pr(L1 = x) ~ exp(-(x - mu_L)^2/(4n/eps)) / (2 sqrt(pi n/eps)).
LltValue llt_L1(const GaussianLLT& g, int64_t x);
// Pr(N1 = t): N(mu_N, sigma_star^2) point mass.
LltValue llt_N1(const GaussianLLT& g, int64_t t);

}  // namespace hypercount
