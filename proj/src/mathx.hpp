#pragma once

#include <cstdint>
#include <vector>

namespace hypercount {

// Compensated (Kahan) accumulator for sums of a few large log-space terms.
class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0, c_ = 0.0;
};

double log_factorial(double n);            // lgamma(n+1)
double log_binomial(double n, double k);   // lgamma-based; requires 0 <= k <= n

// Regularized incomplete gamma functions P(a,x), Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with `dof` degrees.
double chi2_sf(double stat, double dof);

double normal_cdf(double x);

// Pearson chi-square against fully specified expected counts. Bins with
// expected count below `min_expected` are pooled into their inner neighbour
// (from both ends toward the middle) before the statistic is formed.
struct Chi2Result {
    double stat = 0.0;
    int dof = 0;
    double p_value = 1.0;
};
Chi2Result chi2_test(const std::vector<double>& observed,
                     const std::vector<double>& expected,
                     double min_expected = 5.0);

// Gauss-Legendre nodes/weights on [-1,1].
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int n);
};

// Kolmogorov-Smirnov distance between a sample and the standard normal.
double ks_distance_std_normal(std::vector<double> sample);

struct Moments {
    double mean = 0.0;
    double var = 0.0;        // unbiased; NaN when n < 2
    double se_mean = 0.0;
    int64_t n = 0;
};
Moments moments_of(const std::vector<double>& xs);
double correlation(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace hypercount
