#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "logreal.hpp"

namespace hypercount {

// Exact non-negative integer count. Backed by GMP; all arithmetic is exact,
// conversion to log space happens only at the boundary.
using BigCount = mpz_class;

inline BigCount big_binomial(uint64_t n, uint64_t k) {
    BigCount r;
    if (k > n) return r;  // 0
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigCount big_factorial(uint64_t n) {
    BigCount r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Natural log of a positive BigCount via top mantissa + bit length;
// relative error is one double rounding (~1e-16).
inline double big_log(const BigCount& v) {
    if (sgn(v) <= 0) throw std::domain_error("big_log: value must be positive");
    signed long e = 0;
    double m = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(m) + (double)e * M_LN2;
}

inline LogReal big_to_logreal(const BigCount& v) {
    if (sgn(v) == 0) return LogReal::zero();
    return LogReal::from_log(big_log(v), sgn(v));
}

inline std::string big_str(const BigCount& v) { return v.get_str(); }

}  // namespace hypercount
