#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kgd/kernels.hpp"
#include "kgd/presets.hpp"

using namespace kgd;

TEST_SUITE_BEGIN("kernels");

namespace {

std::vector<double> random_field(std::size_t n, std::uint64_t seed, double scale = 0.1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, scale);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
    const std::size_t n = 40001;  // deliberately not a multiple of the chunk count
    const auto u = random_field(n, 1), ux = random_field(n, 2);
    const auto v0 = random_field(n, 3);
    const auto nl = preset("utpux3");

    auto vs = v0, vp = v0;
    nonlinear_rk4_serial(u, vs, ux, nl, 0.02);
    nonlinear_rk4_parallel(u, vp, ux, nl, 0.02);
    CHECK(vs == vp);

    for (double p : {1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()})
        CHECK(lp_norm_serial(u, 1e-3, p) == lp_norm_parallel(u, 1e-3, p));

    std::vector<double> fs(n), fp(n);
    eval_F_array_serial(u, v0, ux, nl, fs);
    eval_F_array_parallel(u, v0, ux, nl, fp);
    CHECK(fs == fp);
}

#ifdef _OPENMP
TEST_CASE("norm reduction is independent of the thread count") {
    const auto u = random_field(123457, 5);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double one = lp_norm_parallel(u, 1e-3, 4);
    omp_set_num_threads(saved);
    const double many = lp_norm_parallel(u, 1e-3, 4);
    CHECK(one == many);
}
#endif

TEST_CASE("lp_norm oracles") {
    // constant 1 on an interval of length 2: ||.||_2 = sqrt(2)
    std::vector<double> ones(1000, 1.0);
    CHECK(lp_norm(ones, 2.0 / 1000, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // sup norm picks the largest magnitude regardless of sign
    std::vector<double> v = {0.1, -3.5, 2.0};
    CHECK(lp_norm(v, 0.5, std::numeric_limits<double>::infinity()) == doctest::Approx(3.5));
    // discrete Gaussian vs the analytic L2 norm (pi/2)^(1/4) sigma^(1/2)... on a wide grid
    const int n = 16384;
    const double L = 40, dx = 2 * L / n, sigma = 1.7;
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        const double x = -L + i * dx;
        g[i] = std::exp(-x * x / (2 * sigma * sigma));
    }
    const double exact = std::sqrt(sigma * std::sqrt(std::acos(-1.0)));
    CHECK(lp_norm(g, dx, 2) == doctest::Approx(exact).epsilon(1e-6));
    CHECK_THROWS_AS((void)lp_norm(g, dx, 0.5), std::invalid_argument);
}

TEST_CASE("pointwise rk4 against the separable v' = -v^3 solution") {
    const auto nl = preset("ut3");
    const std::size_t n = 64;
    std::vector<double> u(n, 0.0), ux(n, 0.0), v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 0.5 + 0.01 * double(i);
    const auto v0 = v;
    const double dt = 0.01;
    nonlinear_rk4(u, v, ux, nl, dt, Exec::Serial);
    for (std::size_t i = 0; i < n; ++i) {
        const double exact = 1.0 / std::sqrt(1.0 / (v0[i] * v0[i]) + 2 * dt);
        CHECK(v[i] == doctest::Approx(exact).epsilon(1e-9));  // O(dt^5) local error
    }
}

TEST_SUITE_END();
