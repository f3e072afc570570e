#pragma once

#include <cmath>
#include <stdexcept>

namespace hypercount {

// Sign + log-magnitude representation for quantities far outside double range
// (counts like C_r(s,t) reach exp(10^6) and beyond).
struct LogReal {
    int sign = 0;          // -1, 0, +1
    double log_abs = 0.0;  // natural log of |value|; meaningless when sign == 0

    static LogReal zero() { return {0, 0.0}; }
    static LogReal from_log(double lg, int sgn = 1) { return {sgn, lg}; }
    static LogReal from_double(double v) {
        if (v == 0.0) return zero();
        return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
    }

    LogReal operator*(const LogReal& o) const {
        if (sign == 0 || o.sign == 0) return zero();
        return {sign * o.sign, log_abs + o.log_abs};
    }
    LogReal operator/(const LogReal& o) const {
        if (o.sign == 0) throw std::domain_error("LogReal: division by zero");
        if (sign == 0) return zero();
        return {sign * o.sign, log_abs - o.log_abs};
    }

    // Conversion is refused once exp() would overflow or flush to subnormal.
    double to_double() const {
        if (sign == 0) return 0.0;
        if (std::fabs(log_abs) >= 700.0)
            throw std::domain_error("LogReal: magnitude outside double range");
        return sign * std::exp(log_abs);
    }
    double log10() const {
        if (sign == 0) throw std::domain_error("LogReal: log10 of zero");
        return log_abs / std::log(10.0);
    }

    bool same_sign_less(const LogReal& o) const {
        if (sign != o.sign) throw std::domain_error("LogReal: comparing mixed signs");
        if (sign == 0) return false;
        return sign > 0 ? log_abs < o.log_abs : log_abs > o.log_abs;
    }
};

}  // namespace hypercount
