#include <doctest.h>

#include <cmath>
#include <random>

#include "kgd/profile_ode.hpp"

using namespace kgd;

TEST_SUITE_BEGIN("profile_ode");

TEST_CASE("L closed form vs quadrature on admissible arguments") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ls(0.0, 6.0);     // log10 s
    std::uniform_real_distribution<double> phis(-0.02, 1.0);
    int tested = 0;
    while (tested < 200) {
        const double s = std::pow(10.0, ls(rng));
        const double phi = phis(rng);
        if (1 + 2 * phi * std::log(s) <= 1e-3) continue;  // stay clear of the singularity
        const double a = L_func(s, phi);
        const double b = L_func_quadrature(s, phi);
        CHECK(std::abs(a - b) <= 1e-10 * (1 + std::abs(a)));
        ++tested;
    }
}

TEST_CASE("L special cases and domain") {
    CHECK(L_func(1.0, 0.7) == doctest::Approx(0.0));
    CHECK(L_func(std::exp(1.0), 0.0) == doctest::Approx(-1.0));
    CHECK_THROWS_AS((void)L_func(std::exp(1.0), -0.5), std::domain_error);
}

TEST_CASE("integrator matches the closed form at tau = 1e4") {
    const Complex kappas[] = {{0.125, 0}, {0.375, 0}, {1, 0}, {1, 2}};
    for (const auto kappa : kappas) {
        ProfileParams params{kappa, {1.0, 0.0}, 3.0};
        const auto traj = integrate_profile(params, {}, 1e4, 1000);
        const auto exact = exact_profile(params, traj.taus.back());
        CHECK(std::abs(traj.betas.back() - exact) <= 1e-8 * std::abs(exact));
    }
}

TEST_CASE("integrator is fourth order in the step size") {
    ProfileParams params{{0.375, 0.2}, {1.0, 0.5}, 3.0};
    auto err = [&](int spd) {
        const auto traj = integrate_profile(params, {}, 1e3, spd);
        return std::abs(traj.betas.back() - exact_profile(params, traj.taus.back()));
    };
    const double ratio = err(100) / err(200);
    CHECK(ratio > 16 * 0.5);
    CHECK(ratio < 16 * 2.0);
}

TEST_CASE("closed form modulus law") {
    ProfileParams params{{0.375, 0}, {0.8, 0.6}, 3.0};  // |beta0| = 1
    const double tau = 500;
    const auto b = exact_profile(params, tau);
    const double expected = 1.0 / std::sqrt(1 + 2 * 0.375 * std::log(tau / 3.0));
    CHECK(std::abs(b) == doctest::Approx(expected).epsilon(1e-12));
    // kappa = 0 freezes the modulus entirely
    ProfileParams frozen{{0, 0}, {0.8, 0.6}, 3.0};
    CHECK(std::abs(exact_profile(frozen, tau)) == doctest::Approx(1.0));
}

TEST_CASE("asymptotic form absorbs the closed form as tau0 -> 1") {
    // with tau0 = 1 and beta_inf = beta0 the two expressions coincide
    const Complex kappa{0.375, 0.15};
    const Complex beta0{0.9, -0.2};
    ProfileParams params{kappa, beta0, 1.0};
    for (double tau : {10.0, 100.0, 5000.0}) {
        const auto a = exact_profile(params, tau);
        const auto b = asymptotic_form(kappa, beta0, tau);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    }
}

TEST_CASE("forced equation approaches the asymptotic form without trend growth") {
    // small data and small forcing: with O(1) amplitudes no finite limiting
    // amplitude exists (the inversion denominator 1 - 2 Re k |b|^2 log tau
    // crosses zero), so the asymptotic statement only makes sense here
    ProfileParams params{{0.375, 0}, {0.1, 0.0}, 3.0};
    const Forcing rho = [](double tau) { return Complex(0.01 * std::pow(tau, -1.5), 0); };
    const auto report = asymptotics_deviation(params, rho, 1e2, 1e5, 400);
    REQUIRE(!report.samples.empty());
    CHECK(std::isfinite(report.max_scaled));
    // scaled deviation stays bounded: last decade no worse than 1.5x the first
    double first = 0, last = 0;
    int nf = 0, nl = 0;
    for (const auto& [tau, dev] : report.samples) {
        if (tau <= 1e3) {
            first += dev;
            ++nf;
        }
        if (tau >= 1e4) {
            last += dev;
            ++nl;
        }
    }
    REQUIRE(nf > 0);
    REQUIRE(nl > 0);
    CHECK(last / nl <= 1.5 * (first / nf + 1e-12));
}

TEST_CASE("leading profile at z = 0 follows the damped modulus law") {
    CubicNonlinearity nl;
    nl.gamma[5] = -1;  // -ut^3, Re K_F(0) = 3/8
    const Complex beta_inf{0.5, 0.0};
    for (double tau : {100.0, 1000.0}) {
        const auto a = leading_profile_A(0.0, tau, beta_inf, nl);
        const double expected =
            0.5 / std::sqrt(1 + 2 * 0.375 * 0.25 * std::log(tau));
        CHECK(std::abs(a) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("runaway growth is rejected") {
    ProfileParams params{{-1.0, 0}, {1.0, 0}, 3.0};  // negative Re kappa pumps
    CHECK_THROWS_AS((void)integrate_profile(params, {}, 1e3, 100), std::runtime_error);
}

TEST_SUITE_END();
