#include "kgd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kgd {

namespace {

inline double rk4_point(double u, double v, double ux, const CubicNonlinearity& nl, double dt) {
    const double k1 = eval_F(nl, u, v, ux);
    const double k2 = eval_F(nl, u, v + 0.5 * dt * k1, ux);
    const double k3 = eval_F(nl, u, v + 0.5 * dt * k2, ux);
    const double k4 = eval_F(nl, u, v + dt * k3, ux);
    return v + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
}

constexpr std::size_t kNormChunks = 64;  // fixed, so reductions are thread-count independent

}  // namespace

void nonlinear_rk4_serial(std::span<const double> u, std::span<double> v,
                          std::span<const double> ux, const CubicNonlinearity& nl, double dt) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) v[i] = rk4_point(u[i], v[i], ux[i], nl, dt);
}

void nonlinear_rk4_parallel(std::span<const double> u, std::span<double> v,
                            std::span<const double> ux, const CubicNonlinearity& nl, double dt) {
    const std::ptrdiff_t n = std::ptrdiff_t(v.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) v[i] = rk4_point(u[i], v[i], ux[i], nl, dt);
}

void nonlinear_rk4(std::span<const double> u, std::span<double> v, std::span<const double> ux,
                   const CubicNonlinearity& nl, double dt, Exec exec) {
    if (exec == Exec::Serial) nonlinear_rk4_serial(u, v, ux, nl, dt);
    else nonlinear_rk4_parallel(u, v, ux, nl, dt);
}

namespace {

template <bool Parallel>
double lp_norm_impl(std::span<const double> values, double dx, double p) {
    if (!(p >= 1)) throw std::invalid_argument("lp_norm: p must be >= 1");
    const std::ptrdiff_t n = std::ptrdiff_t(values.size());
    if (n == 0) return 0.0;
    if (std::isinf(p)) {
        double partial[kNormChunks] = {};
        const std::ptrdiff_t chunk = (n + kNormChunks - 1) / kNormChunks;
#pragma omp parallel for schedule(static) if (Parallel)
        for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(kNormChunks); ++c) {
            double m = 0;
            for (std::ptrdiff_t i = c * chunk; i < std::min(n, (c + 1) * chunk); ++i)
                m = std::max(m, std::abs(values[i]));
            partial[c] = m;
        }
        return *std::max_element(partial, partial + kNormChunks);
    }
    double partial[kNormChunks] = {};
    const std::ptrdiff_t chunk = (n + kNormChunks - 1) / kNormChunks;
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(kNormChunks); ++c) {
        double s = 0;
        for (std::ptrdiff_t i = c * chunk; i < std::min(n, (c + 1) * chunk); ++i)
            s += std::pow(std::abs(values[i]), p);
        partial[c] = s;
    }
    double total = 0;
    for (double s : partial) total += s;
    return std::pow(total * dx, 1.0 / p);
}

}  // namespace

double lp_norm_serial(std::span<const double> values, double dx, double p) {
    return lp_norm_impl<false>(values, dx, p);
}

double lp_norm_parallel(std::span<const double> values, double dx, double p) {
    return lp_norm_impl<true>(values, dx, p);
}

double lp_norm(std::span<const double> values, double dx, double p, Exec exec) {
    return exec == Exec::Serial ? lp_norm_serial(values, dx, p) : lp_norm_parallel(values, dx, p);
}

void eval_F_array_serial(std::span<const double> u, std::span<const double> v,
                         std::span<const double> ux, const CubicNonlinearity& nl,
                         std::span<double> out) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = eval_F(nl, u[i], v[i], ux[i]);
}

void eval_F_array_parallel(std::span<const double> u, std::span<const double> v,
                           std::span<const double> ux, const CubicNonlinearity& nl,
                           std::span<double> out) {
    const std::ptrdiff_t n = std::ptrdiff_t(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = eval_F(nl, u[i], v[i], ux[i]);
}

void eval_F_array(std::span<const double> u, std::span<const double> v, std::span<const double> ux,
                  const CubicNonlinearity& nl, std::span<double> out, Exec exec) {
    if (exec == Exec::Serial) eval_F_array_serial(u, v, ux, nl, out);
    else eval_F_array_parallel(u, v, ux, nl, out);
}

}  // namespace kgd
