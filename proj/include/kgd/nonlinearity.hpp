#ifndef KGD_NONLINEARITY_HPP
#define KGD_NONLINEARITY_HPP

#include <array>
#include <complex>

namespace kgd {

/// Cubic homogeneous nonlinearity F(u, u_t, u_x) with ten real coefficients:
///   F = (g1 u^2 + g2 u_t^2 + g3 u_x^2 + g4 u_t u_x) u
///     + (g5 u^2 + g6 u_t^2 + g7 u_x^2) u_t
///     + (g8 u^2 + g9 u_t^2 + g10 u_x^2) u_x
struct CubicNonlinearity {
    std::array<double, 10> gamma{};  // gamma[0] = g1, ..., gamma[9] = g10

    bool is_zero(double tol = 0.0) const;
};

/// Coefficients of the real cubic P_F(y) = p0 + p1 y + p2 y^2 + p3 y^3.
struct CubicPoly {
    double p0 = 0, p1 = 0, p2 = 0, p3 = 0;

    double operator()(double y) const { return p0 + y * (p1 + y * (p2 + y * p3)); }
    double deriv(double y) const { return p1 + y * (2 * p2 + y * 3 * p3); }
    double deriv2(double y) const { return 2 * p2 + 6 * p3 * y; }
    CubicPoly scaled(double lambda) const { return {lambda * p0, lambda * p1, lambda * p2, lambda * p3}; }
};

/// Largest |z| accepted by the K_F evaluators; cosh^3 overflows well before
/// this, so results are additionally checked for finiteness.
inline constexpr double kKfZMax = 300.0;

double eval_F(const CubicNonlinearity& nl, double u, double ut, double ux);

/// Closed form of K_F(z); throws std::domain_error if |z| > z_max or the
/// result overflows.
std::complex<double> K_F_closed(const CubicNonlinearity& nl, double z, double z_max = kKfZMax);

/// Periodic trapezoid quadrature of the defining integral
///   K_F(z) = (i/2pi) \int_0^{2pi} F(cos t, -cosh z sin t, sinh z sin t) e^{-it} dt.
/// Exact to rounding for n_nodes >= 8 since the integrand is a trigonometric
/// polynomial of degree 4. Independent oracle for K_F_closed.
std::complex<double> K_F_quadrature(const CubicNonlinearity& nl, double z, int n_nodes = 64,
                                    double z_max = kKfZMax);

/// Coefficients of P_F(y) = 8 (1-y^2)^{3/2} Re K_F(atanh y).
CubicPoly P_F_coeffs(const CubicNonlinearity& nl);

}  // namespace kgd

#endif
