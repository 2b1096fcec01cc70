#include "kgd/nonlinearity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kgd {

bool CubicNonlinearity::is_zero(double tol) const {
    for (double g : gamma)
        if (std::abs(g) > tol) return false;
    return true;
}

double eval_F(const CubicNonlinearity& nl, double u, double ut, double ux) {
    const auto& g = nl.gamma;
    return (g[0] * u * u + g[1] * ut * ut + g[2] * ux * ux + g[3] * ut * ux) * u +
           (g[4] * u * u + g[5] * ut * ut + g[6] * ux * ux) * ut +
           (g[7] * u * u + g[8] * ut * ut + g[9] * ux * ux) * ux;
}

static void check_z(double z, double z_max) {
    if (!(std::abs(z) <= z_max))
        throw std::domain_error("K_F: |z| exceeds overflow guard z_max");
}

std::complex<double> K_F_closed(const CubicNonlinearity& nl, double z, double z_max) {
    check_z(z, z_max);
    const auto& g = nl.gamma;
    const double ch = std::cosh(z), sh = std::sinh(z);
    const double im = (3 * g[0] + g[1] * ch * ch + g[2] * sh * sh - g[3] * ch * sh) / 8;
    const double re = -ch * (g[4] + 3 * g[5] * ch * ch + 3 * g[6] * sh * sh) / 8 +
                      sh * (g[7] + 3 * g[8] * ch * ch + 3 * g[9] * sh * sh) / 8;
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::domain_error("K_F: overflow in closed form");
    return {re, im};
}

std::complex<double> K_F_quadrature(const CubicNonlinearity& nl, double z, int n_nodes,
                                    double z_max) {
    check_z(z, z_max);
    if (n_nodes < 8) throw std::invalid_argument("K_F_quadrature: n_nodes < 8");
    const double ch = std::cosh(z), sh = std::sinh(z);
    std::complex<double> acc{0, 0};
    for (int k = 0; k < n_nodes; ++k) {
        const double theta = 2 * std::numbers::pi * k / n_nodes;
        const double s = std::sin(theta), c = std::cos(theta);
        const double f = eval_F(nl, c, -ch * s, sh * s);
        acc += f * std::complex<double>(c, -s);
    }
    std::complex<double> result = std::complex<double>(0, 1) * acc / double(n_nodes);
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
        throw std::domain_error("K_F_quadrature: overflow");
    return result;
}

CubicPoly P_F_coeffs(const CubicNonlinearity& nl) {
    const auto& g = nl.gamma;
    return {-(g[4] + 3 * g[5]), g[7] + 3 * g[8], g[4] - 3 * g[6], 3 * g[9] - g[7]};
}

}  // namespace kgd
