#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "params.hpp"
#include "rng.hpp"

using namespace hypercount;

TEST_CASE("psi_r is strictly increasing") {
    Rng rng(17);
    for (int r = 2; r <= 8; r++) {
        for (int i = 0; i < 1000; i++) {
            double a = rng.u01_pos() * 0.999;
            double b = rng.u01_pos() * 0.999;
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            CHECK(psi_r(r, a) < psi_r(r, b));
        }
    }
    CHECK(psi_r(3, 0.5) < psi_r(3, 0.6));
}

TEST_CASE("psi_r small-rho limit: value/rho^2 -> (r-1)/12") {
    for (int r : {2, 3, 5}) {
        double v6 = psi_r(r, 1e-6) / (1e-12);
        double v8 = psi_r(r, 1e-8) / (1e-16);
        CHECK(v8 == doctest::Approx((r - 1) / 12.0).epsilon(1e-6));
        // convergence from above: Psi = (r-1)rho^2/12 (1 + rho + ...)
        CHECK(v6 > v8);
    }
}

TEST_CASE("psi_2 closed form") {
    // Psi_2(rho) = -(log(1-rho)/2)((2-rho)/rho) - 1
    for (double rho : {0.1, 0.37, 0.9}) {
        double direct = -(std::log1p(-rho) / 2.0) * ((2.0 - rho) / rho) - 1.0;
        CHECK(psi_r(2, rho) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("psi_r series and direct branches agree at the switch") {
    for (int r = 2; r <= 8; r++) {
        for (double rho : {0.99e-4, 1.01e-4, 1e-4}) {
            double direct = -((double)(r - 1) / r) * (std::log1p(-rho) / rho) *
                                (-std::expm1(r * std::log1p(-rho))) /
                                (-std::expm1((r - 1) * std::log1p(-rho))) -
                            1.0;
            CHECK(std::fabs(psi_r(r, rho) - direct) < 1e-10);
        }
    }
}

TEST_CASE("psi_r domain errors") {
    CHECK_THROWS_AS(psi_r(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(psi_r(2, 1.0), std::domain_error);
    CHECK_THROWS_AS(psi_r(1, 0.5), std::domain_error);
}

TEST_CASE("solve_rho: large-s leading order") {
    auto inst = solve_rho(2, 1000000, 834);
    // rho ~ 2 sqrt(3 (t-1)/s) to leading order
    double series = 2.0 * std::sqrt(3.0 * 833.0 / 1e6);
    CHECK(inst.rho == doctest::Approx(series).epsilon(0.02));
    CHECK(inst.rho == doctest::Approx(0.1).epsilon(0.01));
    CHECK(std::fabs(psi_r(2, inst.rho) - 833.0 / 1e6) < 1e-12);
}

TEST_CASE("solve_rho: residual and edge count") {
    auto inst = solve_rho(3, 7, 2);
    CHECK(inst.m == 4);
    CHECK(std::fabs(psi_r(3, inst.rho) - 1.0 / 7.0) < 1e-12);

    auto i2 = solve_rho(2, 10, 2);
    CHECK(std::fabs(psi_r(2, i2.rho) - 0.1) < 1e-12);
}

TEST_CASE("solve_rho: rejects t < 2 and divisibility failures") {
    CHECK_THROWS_AS(solve_rho(2, 10, 1), std::domain_error);
    CHECK_THROWS_AS(solve_rho(2, 10, 0), std::domain_error);
    CHECK_THROWS_AS(solve_rho(3, 6, 2), std::invalid_argument);  // 6+3-1 odd
}

TEST_CASE("solve_rho inverts psi_r (bisection oracle)") {
    Rng rng(23);
    for (int r : {2, 3, 5}) {
        for (int i = 0; i < 50; i++) {
            double rho0 = 0.01 + 0.97 * rng.u01();
            double target = psi_r(r, rho0);
            // independent oracle: plain interval halving on the same target
            double lo = 1e-300, hi = 1 - 1e-16;
            for (int it = 0; it < 200; it++) {
                double mid = 0.5 * (lo + hi);
                (psi_r(r, mid) < target ? lo : hi) = mid;
            }
            CHECK(std::fabs(0.5 * (lo + hi) - rho0) < 1e-10);
        }
    }
}

TEST_CASE("rho_profile: lambda=2 reference values via fixed-point oracle") {
    RhoProfile pr = rho_profile(2, 2.0);
    double x = 0.5;  // oracle: iterate 1 - e^{-2x}
    for (int i = 0; i < 2000; i++) x = -std::expm1(-2.0 * x);
    CHECK(pr.rho2 == doctest::Approx(x).epsilon(1e-9));
    CHECK(pr.rho2 == doctest::Approx(0.796812).epsilon(1e-5));
    CHECK(pr.lambda_dual == doctest::Approx(0.406376).epsilon(1e-5));
    CHECK(pr.rho == pr.rho2);  // r = 2: exponent 1/(r-1) = 1
}

TEST_CASE("rho_profile invariants to 1e-12") {
    for (double lambda : {1.0001, 1.01, 1.1, 2.0, 5.0}) {
        for (int r = 2; r <= 8; r++) {
            RhoProfile pr = rho_profile(r, lambda);
            CHECK(std::fabs(1.0 - pr.rho2 - std::exp(-lambda * pr.rho2)) < 1e-12);
            CHECK(std::fabs(1.0 - pr.rho - std::pow(1.0 - pr.rho2, 1.0 / (r - 1))) < 1e-12);
            CHECK(std::fabs(pr.rho_star -
                            (lambda / r * (1.0 - std::pow(1.0 - pr.rho, r)) - pr.rho)) < 1e-12);
            CHECK(std::fabs(pr.lambda_dual * std::exp(-pr.lambda_dual) -
                            lambda * std::exp(-lambda)) < 1e-12);
            CHECK(std::fabs(pr.lambda_dual - lambda * (1.0 - pr.rho2)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(rho_profile(2, 1.0), std::domain_error);
    CHECK_THROWS_AS(rho_profile(2, 0.5), std::domain_error);
}

TEST_CASE("rho_profile: near-critical expansion") {
    RhoProfile pr = rho_profile(3, 1.001);
    double ratio = pr.rho / (2.0 * 0.001 / (3 - 1));
    CHECK(ratio > 0.99);
    CHECK(ratio < 1.01);
}

TEST_CASE("asymptotic ratios converge to 1 monotonically as eps decreases") {
    for (int r : {2, 3, 5, 8}) {
        double prev_rho_ratio = -1.0, prev_star_ratio = -1.0;
        bool first = true;
        for (double eps = 0.1; eps >= 0.99e-6; eps /= std::sqrt(10.0)) {
            RhoProfile pr = rho_profile(r, 1.0 + eps);
            double rho_ratio = pr.rho / (2.0 * eps / (r - 1));
            double star_ratio = pr.rho_star / (2.0 / (3.0 * (r - 1) * (r - 1)) * eps * eps * eps);
            if (!first) {
                CHECK(rho_ratio > prev_rho_ratio);   // approaches 1 from below
                CHECK(star_ratio > prev_star_ratio);
            }
            CHECK(rho_ratio < 1.0 + 1e-12);
            CHECK(star_ratio < 1.0 + 1e-12);
            prev_rho_ratio = rho_ratio;
            prev_star_ratio = star_ratio;
            first = false;
        }
        CHECK(prev_rho_ratio == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(prev_star_ratio == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("sigmas") {
    Sigmas s = sigmas(ModelParams::from_eps(2, 2000000, 0.1));
    CHECK(s.sigma_n == doctest::Approx(std::sqrt(4e7)).epsilon(1e-12));
    Sigmas s3 = sigmas(ModelParams::from_eps(3, 1000000, 0.1));
    CHECK(s3.sigma_star == doctest::Approx(std::sqrt(10.0 / 3.0) * 0.5 * std::sqrt(1000.0))
                               .epsilon(1e-12));
    // sigma_star / sigma_n = Theta(eps^2) -> 0
    double prev = 1e9;
    for (double eps : {0.1, 0.01, 0.001}) {
        Sigmas sc = sigmas(ModelParams::from_eps(3, 100000000, eps));
        CHECK(sc.sigma_star / sc.sigma_n < prev);
        prev = sc.sigma_star / sc.sigma_n;
    }
    CHECK_THROWS_AS(sigmas(ModelParams::from_eps(2, 100, -0.1)), std::domain_error);
}

TEST_CASE("embed_enumeration hits the target order and nullity") {
    {
        auto inst = solve_rho(2, 100000, 100);
        ModelParams mp = embed_enumeration(inst);
        CHECK(mp.lambda > 1.0);
        RhoProfile pr = rho_profile(mp.r, mp.lambda);
        CHECK(std::fabs(pr.rho * mp.n - (double)inst.s) <= 1.0);
    }
    {
        auto inst = solve_rho(3, 100001, 50);  // (s+t-1) divisible by 2
        ModelParams mp = embed_enumeration(inst);
        CHECK(mp.lambda > 1.0);
        RhoProfile pr = rho_profile(mp.r, mp.lambda);
        CHECK(std::fabs(pr.rho_star * mp.n - (double)inst.t) <= 2.0);
    }
}

TEST_CASE("ModelParams invariants") {
    ModelParams mp = ModelParams::from_p(3, 1000, 2.5e-7);
    CHECK(std::fabs(mp.lambda - mp.p * 1e6) / mp.lambda < 1e-12);
    CHECK(mp.eps == mp.lambda - 1.0);
    ModelParams ml = ModelParams::from_lambda(3, 1000, 1.3);
    CHECK(std::fabs(ml.p * 1e6 - 1.3) < 1e-12);
    CHECK_THROWS_AS(ModelParams::from_p(2, 10, 1.5), std::domain_error);
    CHECK_THROWS_AS(ModelParams::from_lambda(2, 1, 1.1), std::domain_error);
}
