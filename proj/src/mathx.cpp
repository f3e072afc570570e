#include "mathx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypercount {

double log_factorial(double n) { return std::lgamma(n + 1.0); }

double log_binomial(double n, double k) {
    if (k < 0 || k > n) throw std::domain_error("log_binomial: k outside [0,n]");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Series expansion of P(a,x), valid for x < a+1.
static double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; i++) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a,x), valid for x >= a+1.
static double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; i++) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_p(double a, double x) {
    if (x < 0 || a <= 0) throw std::domain_error("gamma_p: bad arguments");
    if (x == 0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw std::domain_error("gamma_q: bad arguments");
    if (x == 0) return 1.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_sf(double stat, double dof) {
    if (stat <= 0) return 1.0;
    return gamma_q(dof / 2.0, stat / 2.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

Chi2Result chi2_test(const std::vector<double>& observed,
                     const std::vector<double>& expected,
                     double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi2_test: size mismatch");
    // Pool sparse bins inward from both ends; expected masses for our uses are
    // unimodal so this keeps every pooled bin contiguous.
    std::vector<double> obs, exp;
    size_t lo = 0, hi = observed.size();
    double o_acc = 0, e_acc = 0;
    while (lo < hi && e_acc + expected[lo] < min_expected) {
        o_acc += observed[lo];
        e_acc += expected[lo];
        lo++;
    }
    double o_tail = 0, e_tail = 0;
    while (hi > lo && e_tail + expected[hi - 1] < min_expected) {
        hi--;
        o_tail += observed[hi];
        e_tail += expected[hi];
    }
    if (e_acc > 0 || lo > 0) {
        if (lo < hi) {
            o_acc += observed[lo];
            e_acc += expected[lo];
            lo++;
        }
        obs.push_back(o_acc);
        exp.push_back(e_acc);
    }
    for (size_t i = lo; i < hi; i++) {
        obs.push_back(observed[i]);
        exp.push_back(expected[i]);
    }
    if (e_tail > 0) {
        if (!obs.empty() && exp.back() < min_expected + e_tail) {
            // fold into last kept bin
            obs.back() += o_tail;
            exp.back() += e_tail;
        } else {
            obs.push_back(o_tail);
            exp.push_back(e_tail);
        }
    }
    Chi2Result r;
    for (size_t i = 0; i < obs.size(); i++) {
        if (exp[i] <= 0) continue;
        double d = obs[i] - exp[i];
        r.stat += d * d / exp[i];
        r.dof++;
    }
    r.dof = std::max(1, r.dof - 1);
    r.p_value = chi2_sf(r.stat, r.dof);
    return r;
}

GaussLegendre::GaussLegendre(int n) {
    x.resize(n);
    w.resize(n);
    const double eps = 1e-15;
    int m = (n + 1) / 2;
    for (int i = 0; i < m; i++) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; it++) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; j++) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < eps) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

double ks_distance_std_normal(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    const double n = (double)sample.size();
    double d = 0.0;
    for (size_t i = 0; i < sample.size(); i++) {
        double f = normal_cdf(sample[i]);
        d = std::max(d, std::fabs((i + 1) / n - f));
        d = std::max(d, std::fabs(f - i / n));
    }
    return d;
}

Moments moments_of(const std::vector<double>& xs) {
    Moments m;
    m.n = (int64_t)xs.size();
    if (m.n == 0) {
        m.mean = m.var = m.se_mean = std::nan("");
        return m;
    }
    double s = 0;
    for (double v : xs) s += v;
    m.mean = s / m.n;
    if (m.n < 2) {
        m.var = m.se_mean = std::nan("");
        return m;
    }
    double q = 0;
    for (double v : xs) q += (v - m.mean) * (v - m.mean);
    m.var = q / (m.n - 1);
    m.se_mean = std::sqrt(m.var / m.n);
    return m;
}

double correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("correlation: need two equal-length samples");
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0, syy = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace hypercount
