#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypercount {

// One identity evaluated along a log-spaced rho grid decreasing toward 0,
// with a limit estimate extrapolated linearly in rho from the last two
// points (exact for the O(rho) leading error of these families).
struct SweepPoint {
    double rho = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double diff = 0.0;
    double extra = 0.0;  // family-specific: diff/rho^4 for the KL sweep
};
struct LimitSweep {
    std::vector<SweepPoint> pts;  // rho decreasing
    double limit_estimate = 0.0;
    bool ok = true;
    std::string note;
};

std::vector<double> log_grid(double rho_max, double rho_min, int per_decade);

// Graph-case connectivity probability with x = m/s, y solving
// 2xy = log((1+y)/(1-y)), and the exact prefactor exp(a(x)):
//   log P_2 = a(x) + s [log 2 - x + (1-x) log y - (1/2) log(1-y^2)].
double bck_log_P2(int64_t s, int64_t t);
double bck_a_of_rho(double rho);
double bck_y_of_x(double x);
// a(x(rho)) along the grid; limit target 2 + log(3/2)/2.
LimitSweep bck_a_sweep(const std::vector<double>& grid);

// f_d e^{g_d} along the grid for both published and preprint versions of g_d.
enum class BcokVersion { preprint, published };
LimitSweep bcok_limit(int d, BcokVersion version, const std::vector<double>& grid);
double bcok_target(int d, BcokVersion version);
double bcok_value(int d, BcokVersion version, double rho);

// phi~(n*) against log psi for the 3-uniform count; equal as functions of rho.
LimitSweep sw_identity(const std::vector<double>& grid);

// Per-vertex log difference of the two sides of the small-nullity
// comparison, reported as diff/rho^4 (Theta(rho^4) as rho -> 0).
LimitSweep kl_discrepancy(int r, const std::vector<double>& grid);

std::string sweep_csv(const LimitSweep& sweep, bool with_extra = false);

}  // namespace hypercount
