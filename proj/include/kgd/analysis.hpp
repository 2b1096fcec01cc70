#ifndef KGD_ANALYSIS_HPP
#define KGD_ANALYSIS_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kgd/classifier.hpp"
#include "kgd/solver.hpp"

namespace kgd {

struct HyperbolicPoint {
    double tau;
    double z;
};

/// tau = sqrt((t+2B)^2 - x^2), z = atanh(x/(t+2B)). Domain error outside the
/// interior of the cone |x| < t + 2B.
HyperbolicPoint to_hyperbolic(double t, double x, double B);
/// Inverse map: t = tau cosh z - 2B, x = tau sinh z.
std::pair<double, double> from_hyperbolic(const HyperbolicPoint& pt, double B);

struct AlphaSample {
    double tau;
    double z;
    std::complex<double> alpha;
};

/// Rescaled complex profile alpha = e^{-i tau}(w - i dw/dtau) with
/// w = tau^{1/2} u, evaluated at the requested (tau, z) points. Spatial values
/// come from cubic interpolation on the grid; time derivatives use the stored
/// v-field and spectral ux, with linear interpolation between the two
/// snapshots bracketing each target time.
/// Throws std::domain_error on cone violation, std::runtime_error if no
/// snapshot bracket exists.
std::vector<AlphaSample> extract_alpha(const RunRecord& run, const std::vector<double>& z_grid,
                                       const std::vector<double>& tau_list, double B);

struct ModulationFit {
    double re_kappa_eff;  // slope / 2
    double slope;
    double intercept;
    double r_squared;
};

/// Linear regression of 1/|alpha|^2 against log tau; the exact modulus law of
/// the limit ODE gives d(1/|alpha|^2)/d(log tau) = 2 Re kappa.
/// Requires >= 20 samples spanning >= 1 decade; throws std::invalid_argument
/// otherwise and std::runtime_error if |alpha| degenerates below 1e-12.
ModulationFit fit_modulation(const std::vector<AlphaSample>& samples);

/// Quadrature of integral_0^2 (1 + eta^m log(t+2))^{-p/2} d eta.
double I_p_m(double t, int m, double p);

struct DecayFit {
    double p;
    NormTarget target;
    double a_fixed;             // 1/2 - 1/p, imposed, not fitted
    double q_fit;               // exponent on log(2+t)
    std::optional<double> r_fit;  // exponent on 1 + loglog(2+t), when requested
    double residual;            // rms residual of the log-regression
    double t_min, t_max;
    double loglog_span;         // abscissa span, used for the inconclusive test
};

/// Fits norm(t) ~ C (1+t)^{-(1/2-1/p)} (log(2+t))^{-q} [(1+loglog(2+t))^{-r}]:
/// y = norm * (1+t)^{1/2-1/p}, regress log y on loglog(2+t) (and optionally on
/// log(1+loglog(2+t))). Window must span >= 1 decade with t_min >= 20.
DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& norms, double p,
                   NormTarget target = NormTarget::u, bool fit_r = false);

enum class Verdict { Consistent, Inconsistent, Inconclusive };

struct Comparison {
    Verdict verdict;
    double q_predicted;
    double q_fit;
    double margin;       // q_fit - (q_predicted - tolerance)
    std::string reason;
};

/// Consistent if q_fit >= q_predicted - 0.15 (theorem rates are upper bounds,
/// so over-decay is fine); inconclusive if the loglog window is too short to
/// resolve the discrepancy against the fit residual.
Comparison compare_with_theorem(const DecayFit& fit, const DecayLaw& law);

std::string to_string(Verdict v);

}  // namespace kgd

#endif
