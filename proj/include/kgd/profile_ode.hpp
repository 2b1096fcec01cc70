#ifndef KGD_PROFILE_ODE_HPP
#define KGD_PROFILE_ODE_HPP

#include <complex>
#include <functional>
#include <vector>

#include "kgd/nonlinearity.hpp"

namespace kgd {

using Complex = std::complex<double>;
using Forcing = std::function<Complex(double)>;  // tau -> rho(tau), may be empty

/// Logarithmic phase integral
///   L(s, phi) = -int_1^s dsig / (sig (1 + 2 phi log sig))
///             = -log s                          (phi = 0)
///             = -log(1 + 2 phi log s) / (2 phi) (phi != 0, argument positive).
/// Throws std::domain_error when 1 + 2 phi log s <= 0.
double L_func(double s, double phi);

/// Composite quadrature oracle for L_func (n panels of Gauss-Legendre 5).
double L_func_quadrature(double s, double phi, int n = 1000);

struct ProfileParams {
    Complex kappa;   // Re kappa >= 0
    Complex beta0;   // initial datum at tau0 (epsilon already folded in)
    double tau0 = 3.0;  // > 1
};

struct ProfileTrajectory {
    std::vector<double> taus;    // strictly increasing, taus[0] = tau0
    std::vector<Complex> betas;
};

/// RK4 integration of dbeta/dtau = -(kappa/tau)|beta|^2 beta + rho(tau) on a
/// log-spaced tau grid. Throws std::runtime_error if |beta| grows more than
/// 10x in a single step (non-dissipative misuse).
ProfileTrajectory integrate_profile(const ProfileParams& params, const Forcing& forcing,
                                    double tau_end, int steps_per_decade = 1000);

/// Closed-form solution for rho == 0:
///   |beta|^2   = |beta0|^2 / (1 + 2 Re k |beta0|^2 log(tau/tau0))
///   arg beta   = arg beta0 + Im k |beta0|^2 L(tau/tau0, Re k |beta0|^2).
Complex exact_profile(const ProfileParams& params, double tau);

/// Large-time form beta_inf exp(i Im k |b|^2 L(tau, Re k |b|^2)) / sqrt(1 + 2 Re k |b|^2 log tau)
/// with b = beta_inf; the forced equation approaches this with an
/// O((log tau)^{-3/2}) remainder.
Complex asymptotic_form(Complex kappa, Complex beta_inf, double tau);

/// Leading profile A(tau, z) of the solution along the ray z, built from
/// K_F(z) and the asymptotic amplitude beta_inf, with weight chi(z).
Complex leading_profile_A(double z, double tau, Complex beta_inf, const CubicNonlinearity& nl,
                          const std::function<double(double)>& chi = {});

struct DeviationReport {
    Complex beta_inf;                                  // fitted from trajectory tail
    double max_scaled = 0;                             // max |beta - form| (log tau)^{3/2}
    std::vector<std::pair<double, double>> samples;    // (tau, scaled deviation)
};

/// Integrates the forced ODE, fits beta_inf by inverting the asymptotic form
/// over the last tenth of the trajectory, and reports the (log tau)^{3/2}-
/// scaled deviation over [tau_lo, tau_hi].
DeviationReport asymptotics_deviation(const ProfileParams& params, const Forcing& forcing,
                                      double tau_lo, double tau_hi,
                                      int steps_per_decade = 1000);

}  // namespace kgd

#endif
