#include "kgd/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fmt/core.h>

namespace kgd {

HyperbolicPoint to_hyperbolic(double t, double x, double B) {
    const double s = t + 2 * B;
    if (!(std::abs(x) < s)) throw std::domain_error("point outside the interior cone |x| < t + 2B");
    return {std::sqrt(s * s - x * x), std::atanh(x / s)};
}

std::pair<double, double> from_hyperbolic(const HyperbolicPoint& pt, double B) {
    return {pt.tau * std::cosh(pt.z) - 2 * B, pt.tau * std::sinh(pt.z)};
}

namespace {

// 4-point Lagrange interpolation on the periodic grid, centered at x
double cubic_interp(const std::vector<double>& f, const Grid1D& g, double x) {
    const int n = g.N;
    const double dx = g.dx();
    double fk = std::floor((x + g.L) / dx);
    const int k = int(fk);
    const double s = (x + g.L) / dx - fk;  // in [0,1)
    auto at = [&](int j) { return f[((j % n) + n) % n]; };
    const double fm1 = at(k - 1), f0 = at(k), f1 = at(k + 1), f2 = at(k + 2);
    return fm1 * (-s * (s - 1) * (s - 2) / 6.0) + f0 * ((s + 1) * (s - 1) * (s - 2) / 2.0) +
           f1 * (-(s + 1) * s * (s - 2) / 2.0) + f2 * ((s + 1) * s * (s - 1) / 6.0);
}

struct PointValues {
    double u, v, ux;
};

PointValues sample_run(const RunRecord& run, double t, double x) {
    const auto& snaps = run.snapshots;
    if (snaps.empty()) throw std::runtime_error("run has no snapshots");
    // find bracketing snapshots in time
    auto it = std::lower_bound(snaps.begin(), snaps.end(), t,
                               [](const Snapshot& s, double tt) { return s.t < tt; });
    const double tol = 1e-9 * (1 + std::abs(t));
    if (it == snaps.end()) {
        if (std::abs(snaps.back().t - t) <= tol) it = snaps.end() - 1;
        else throw std::runtime_error(fmt::format("no snapshot bracket for t={}", t));
    }
    const Snapshot* hi = &*it;
    const Snapshot* lo = hi;
    if (hi->t > t + tol) {
        if (it == snaps.begin()) throw std::runtime_error(fmt::format("no snapshot bracket for t={}", t));
        lo = &*(it - 1);
    }
    auto interp = [&](auto field) {
        const double a = cubic_interp(lo->*field, run.grid, x);
        if (lo == hi) return a;
        const double b = cubic_interp(hi->*field, run.grid, x);
        const double w = (t - lo->t) / (hi->t - lo->t);
        return (1 - w) * a + w * b;
    };
    return {interp(&Snapshot::u), interp(&Snapshot::v), interp(&Snapshot::ux)};
}

}  // namespace

std::vector<AlphaSample> extract_alpha(const RunRecord& run, const std::vector<double>& z_grid,
                                       const std::vector<double>& tau_list, double B) {
    std::vector<AlphaSample> out;
    out.reserve(z_grid.size() * tau_list.size());
    for (double z : z_grid) {
        for (double tau : tau_list) {
            auto [t, x] = from_hyperbolic({tau, z}, B);
            if (t < -1e-12 || std::abs(x) >= t + 2 * B)
                throw std::domain_error(fmt::format("(tau={}, z={}) maps outside the cone", tau, z));
            const auto pv = sample_run(run, t, x);
            const double rt = std::sqrt(tau);
            const double w = rt * pv.u;
            // d/dtau = (cosh z) d/dt + (sinh z) d/dx at fixed z
            const double dw = rt * (std::cosh(z) * pv.v + std::sinh(z) * pv.ux) + pv.u / (2 * rt);
            const std::complex<double> alpha =
                std::exp(std::complex<double>(0, -tau)) * std::complex<double>(w, -dw);
            out.push_back({tau, z, alpha});
        }
    }
    return out;
}

ModulationFit fit_modulation(const std::vector<AlphaSample>& samples) {
    if (samples.size() < 20) throw std::invalid_argument("fit_modulation: need >= 20 samples");
    double tmin = samples.front().tau, tmax = tmin;
    for (const auto& s : samples) {
        tmin = std::min(tmin, s.tau);
        tmax = std::max(tmax, s.tau);
    }
    if (tmax < 10 * tmin) throw std::invalid_argument("fit_modulation: samples must span a decade in tau");
    const std::size_t n = samples.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& s : samples) {
        const double a2 = std::norm(s.alpha);
        if (a2 < 1e-24) throw std::runtime_error("fit_modulation: |alpha| degenerate");
        const double x = std::log(s.tau), y = 1.0 / a2;
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    const double det = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (const auto& s : samples) {
        const double y = 1.0 / std::norm(s.alpha);
        const double yhat = intercept + slope * std::log(s.tau);
        ss_res += (y - yhat) * (y - yhat);
        ss_tot += (y - ybar) * (y - ybar);
    }
    // a flat series (kappa = 0) has no variance to explain; call that a perfect fit
    const double r2 = ss_tot > 1e-20 * double(n) * ybar * ybar ? 1.0 - ss_res / ss_tot : 1.0;
    return {slope / 2, slope, intercept, r2};
}

double I_p_m(double t, int m, double p) {
    if (t < 0 || m < 1 || m > 3) throw std::invalid_argument("I_p_m: need t >= 0, m in {1,2,3}");
    const double lg = std::log(t + 2);
    // 8-point Gauss-Legendre nodes/weights on [-1, 1]
    static const double gx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                 -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
    static const double gw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                 0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    const int panels = 256;
    const double h = 2.0 / panels;
    double total = 0;
    for (int c = 0; c < panels; ++c) {
        const double a = c * h, mid = a + h / 2;
        double s = 0;
        for (int i = 0; i < 8; ++i) {
            const double eta = mid + gx[i] * h / 2;
            s += gw[i] * std::pow(1.0 + std::pow(eta, m) * lg, -p / 2);
        }
        total += s * h / 2;
    }
    return total;
}

DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& norms, double p,
                   NormTarget target, bool fit_r) {
    if (times.size() != norms.size()) throw std::invalid_argument("fit_decay: size mismatch");
    const double a = DecayLaw::algebraic_exponent(p);
    std::vector<double> x1, x2, y;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (t < 20 || !(norms[i] > 0)) continue;
        x1.push_back(std::log(std::log(2 + t)));
        x2.push_back(std::log(1 + std::log(std::log(2 + t))));
        y.push_back(std::log(norms[i] * std::pow(1 + t, a)));
    }
    if (x1.size() < 5) throw std::invalid_argument("fit_decay: too few usable points (t >= 20)");
    const double tmin = std::exp(std::exp(x1.front())) - 2, tmax = std::exp(std::exp(x1.back())) - 2;
    if (tmax < 10 * tmin) throw std::invalid_argument("fit_decay: window must span a decade");

    const int n = int(x1.size());
    const int cols = fit_r ? 3 : 2;
    Eigen::MatrixXd X(n, cols);
    Eigen::VectorXd Y(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1;
        X(i, 1) = x1[i];
        if (fit_r) X(i, 2) = x2[i];
        Y(i) = y[i];
    }
    Eigen::VectorXd beta = X.colPivHouseholderQr().solve(Y);
    const Eigen::VectorXd res = Y - X * beta;
    DecayFit fit;
    fit.p = p;
    fit.target = target;
    fit.a_fixed = a;
    fit.q_fit = -beta(1);
    if (fit_r) fit.r_fit = beta(2);
    fit.residual = std::sqrt(res.squaredNorm() / n);
    fit.t_min = tmin;
    fit.t_max = tmax;
    fit.loglog_span = x1.back() - x1.front();
    return fit;
}

Comparison compare_with_theorem(const DecayFit& fit, const DecayLaw& law) {
    constexpr double kTol = 0.15;
    Comparison c;
    c.q_predicted = law.log_exponent(fit.target, fit.p);
    c.q_fit = fit.q_fit;
    c.margin = fit.q_fit - (c.q_predicted - kTol);
    if (c.margin >= 0) {
        // theorem rates are upper bounds; decaying faster than predicted is fine
        c.verdict = Verdict::Consistent;
        c.reason = fmt::format("q_fit={:.3f} within tolerance of predicted {:.3f}", fit.q_fit,
                               c.q_predicted);
        return c;
    }
    // a slope deficit of kTol is only resolvable if the abscissa span exceeds
    // the residual noise scale by a comfortable factor
    const double needed_span = 2.0 * std::max(fit.residual, 0.05) / kTol;
    if (fit.loglog_span < needed_span) {
        c.verdict = Verdict::Inconclusive;
        c.reason = fmt::format(
            "window too short: loglog span {:.3f} < {:.3f} needed to resolve slope deficit "
            "(residual {:.3f})",
            fit.loglog_span, needed_span, fit.residual);
    } else {
        c.verdict = Verdict::Inconsistent;
        c.reason = fmt::format("q_fit={:.3f} below predicted {:.3f} beyond tolerance", fit.q_fit,
                               c.q_predicted);
    }
    return c;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "consistent";
        case Verdict::Inconsistent: return "inconsistent";
        default: return "inconclusive";
    }
}

}  // namespace kgd
