#ifndef KGD_KERNELS_HPP
#define KGD_KERNELS_HPP

#include <span>

#include "kgd/nonlinearity.hpp"

namespace kgd {

/// Execution policy for the data-parallel inner loops. Serial is the
/// reference implementation kept for testing; Parallel uses OpenMP.
enum class Exec { Serial, Parallel };

/// Advances v by one classical RK4 step of v' = F(u, v, ux) pointwise, with
/// u and ux frozen. In-place on v.
void nonlinear_rk4_serial(std::span<const double> u, std::span<double> v,
                          std::span<const double> ux, const CubicNonlinearity& nl, double dt);
void nonlinear_rk4_parallel(std::span<const double> u, std::span<double> v,
                            std::span<const double> ux, const CubicNonlinearity& nl, double dt);
void nonlinear_rk4(std::span<const double> u, std::span<double> v, std::span<const double> ux,
                   const CubicNonlinearity& nl, double dt, Exec exec);

/// L^p norm (sum |v_k|^p dx)^(1/p), p = infinity gives max |v_k|.
/// Summation runs over a fixed chunk decomposition so the result does not
/// depend on the number of threads.
double lp_norm_serial(std::span<const double> values, double dx, double p);
double lp_norm_parallel(std::span<const double> values, double dx, double p);
double lp_norm(std::span<const double> values, double dx, double p, Exec exec = Exec::Parallel);

/// Pointwise F evaluation into out (used by the method-of-lines stepper).
void eval_F_array_serial(std::span<const double> u, std::span<const double> v,
                         std::span<const double> ux, const CubicNonlinearity& nl,
                         std::span<double> out);
void eval_F_array_parallel(std::span<const double> u, std::span<const double> v,
                           std::span<const double> ux, const CubicNonlinearity& nl,
                           std::span<double> out);
void eval_F_array(std::span<const double> u, std::span<const double> v, std::span<const double> ux,
                  const CubicNonlinearity& nl, std::span<double> out, Exec exec);

}  // namespace kgd

#endif
