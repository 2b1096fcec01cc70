// Timings for the serial reference kernels vs their OpenMP counterparts.
// Usage: bench_kernels [n] [repeats]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "kgd/kernels.hpp"
#include "kgd/presets.hpp"

using clock_type = std::chrono::steady_clock;

template <class F>
double time_ms(int repeats, F&& f) {
    f();  // warm up
    const auto t0 = clock_type::now();
    for (int r = 0; r < repeats; ++r) f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : (1u << 20);
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 20;

    std::mt19937_64 rng(12345);
    std::normal_distribution<double> dist(0.0, 0.1);
    std::vector<double> u(n), v0(n), ux(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = dist(rng);
        v0[i] = dist(rng);
        ux[i] = dist(rng);
    }
    const auto nl = kgd::preset("utpux3");
    const double dt = 0.02, dx = 1e-3;

    std::vector<double> vs = v0, vp = v0;
    const double t_rk4_s = time_ms(repeats, [&] {
        vs = v0;
        kgd::nonlinear_rk4_serial(u, vs, ux, nl, dt);
    });
    const double t_rk4_p = time_ms(repeats, [&] {
        vp = v0;
        kgd::nonlinear_rk4_parallel(u, vp, ux, nl, dt);
    });
    double max_diff = 0;
    for (std::size_t i = 0; i < n; ++i) max_diff = std::max(max_diff, std::abs(vs[i] - vp[i]));

    double norm_s = 0, norm_p = 0;
    const double t_norm_s = time_ms(repeats, [&] { norm_s = kgd::lp_norm_serial(u, dx, 4); });
    const double t_norm_p = time_ms(repeats, [&] { norm_p = kgd::lp_norm_parallel(u, dx, 4); });

    std::vector<double> out(n);
    const double t_f_s =
        time_ms(repeats, [&] { kgd::eval_F_array_serial(u, v0, ux, nl, out); });
    const double t_f_p =
        time_ms(repeats, [&] { kgd::eval_F_array_parallel(u, v0, ux, nl, out); });

    std::printf("n = %zu, %d repeats\n", n, repeats);
    std::printf("%-16s %10s %10s %8s\n", "kernel", "serial/ms", "openmp/ms", "speedup");
    std::printf("%-16s %10.3f %10.3f %7.2fx\n", "nonlinear_rk4", t_rk4_s, t_rk4_p, t_rk4_s / t_rk4_p);
    std::printf("%-16s %10.3f %10.3f %7.2fx\n", "lp_norm(p=4)", t_norm_s, t_norm_p, t_norm_s / t_norm_p);
    std::printf("%-16s %10.3f %10.3f %7.2fx\n", "eval_F_array", t_f_s, t_f_p, t_f_s / t_f_p);
    std::printf("rk4 serial-vs-parallel max |diff| = %.3e (expect 0)\n", max_diff);
    std::printf("lp_norm serial %.17g parallel %.17g (expect equal)\n", norm_s, norm_p);
    return (max_diff == 0 && norm_s == norm_p) ? 0 : 1;
}
