#include "kgd/profile_ode.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kgd {

double L_func(double s, double phi) {
    if (!(s > 0)) throw std::domain_error("L_func: s must be positive");
    const double ls = std::log(s);
    if (phi == 0.0) return -ls;
    const double arg = 1.0 + 2.0 * phi * ls;
    if (!(arg > 0)) throw std::domain_error("L_func: 1 + 2 phi log s <= 0");
    return -std::log(arg) / (2.0 * phi);
}

double L_func_quadrature(double s, double phi, int n) {
    if (!(s > 0)) throw std::domain_error("L_func_quadrature: s must be positive");
    if (n < 1) throw std::invalid_argument("L_func_quadrature: n < 1");
    // substitute w = log sig: integral becomes -int_0^{log s} dw / (1 + 2 phi w)
    const double W = std::log(s);
    // GL5 nodes/weights on [-1, 1]
    static const double xs[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                                 0.538469310105683, 0.906179845938664};
    static const double ws[5] = {0.236926885056189, 0.478628670499366, 0.568888888888889,
                                 0.478628670499366, 0.236926885056189};
    double acc = 0;
    const double h = W / n;
    for (int k = 0; k < n; ++k) {
        const double mid = (k + 0.5) * h;
        for (int i = 0; i < 5; ++i) {
            const double w = mid + 0.5 * h * xs[i];
            const double den = 1.0 + 2.0 * phi * w;
            if (!(den > 0)) throw std::domain_error("L_func_quadrature: integrand pole in range");
            acc += ws[i] * 0.5 * h / den;
        }
    }
    return -acc;
}

namespace {

Complex rhs(const Complex& kappa, const Forcing& forcing, double tau, const Complex& beta) {
    Complex v = -(kappa / tau) * std::norm(beta) * beta;
    if (forcing) v += forcing(tau);
    return v;
}

}  // namespace

ProfileTrajectory integrate_profile(const ProfileParams& params, const Forcing& forcing,
                                    double tau_end, int steps_per_decade) {
    if (!(params.tau0 > 1)) throw std::invalid_argument("integrate_profile: tau0 must be > 1");
    if (!(tau_end > params.tau0)) throw std::invalid_argument("integrate_profile: tau_end <= tau0");
    if (steps_per_decade < 100)
        throw std::invalid_argument("integrate_profile: steps_per_decade < 100");

    const double s0 = std::log(params.tau0), s1 = std::log(tau_end);
    const long nsteps = std::lround(std::ceil((s1 - s0) / std::numbers::ln10 * steps_per_decade));
    const double h = (s1 - s0) / double(nsteps);

    ProfileTrajectory tr;
    tr.taus.reserve(nsteps + 1);
    tr.betas.reserve(nsteps + 1);
    Complex beta = params.beta0;
    tr.taus.push_back(params.tau0);
    tr.betas.push_back(beta);
    // in s = log tau: dbeta/ds = -kappa |beta|^2 beta + tau rho(tau)
    auto f = [&](double s, const Complex& b) {
        const double tau = std::exp(s);
        return tau * rhs(params.kappa, forcing, tau, b);
    };
    for (long k = 0; k < nsteps; ++k) {
        const double s = s0 + k * h;
        const double prev = std::abs(beta);
        const Complex k1 = f(s, beta);
        const Complex k2 = f(s + h / 2, beta + h / 2.0 * k1);
        const Complex k3 = f(s + h / 2, beta + h / 2.0 * k2);
        const Complex k4 = f(s + h, beta + h * k3);
        beta += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!(std::abs(beta) <= 10.0 * prev + 1e-300))  // also catches NaN
            throw std::runtime_error("integrate_profile: |beta| grew >10x in one step");
        tr.taus.push_back(std::exp(s + h));
        tr.betas.push_back(beta);
    }
    tr.taus.back() = tau_end;
    return tr;
}

Complex exact_profile(const ProfileParams& params, double tau) {
    const double rk = params.kappa.real(), ik = params.kappa.imag();
    const double b2 = std::norm(params.beta0);
    const double ratio = tau / params.tau0;
    const double den = 1.0 + 2.0 * rk * b2 * std::log(ratio);
    if (!(den > 0)) throw std::domain_error("exact_profile: log-denominator not positive");
    const double mod = std::sqrt(b2 / den);
    const double phase = std::arg(params.beta0) + ik * b2 * L_func(ratio, rk * b2);
    return std::polar(mod, phase);
}

Complex asymptotic_form(Complex kappa, Complex beta_inf, double tau) {
    const double b2 = std::norm(beta_inf);
    const double den = 1.0 + 2.0 * kappa.real() * b2 * std::log(tau);
    if (!(den > 0)) throw std::domain_error("asymptotic_form: log-denominator not positive");
    const double phase = kappa.imag() * b2 * L_func(tau, kappa.real() * b2);
    return beta_inf * std::polar(1.0 / std::sqrt(den), phase);
}

Complex leading_profile_A(double z, double tau, Complex beta_inf, const CubicNonlinearity& nl,
                          const std::function<double(double)>& chi) {
    const double ch = std::cosh(z);
    if (!(tau * ch > 1)) throw std::domain_error("leading_profile_A: tau cosh z must exceed 1");
    const double w = chi ? chi(z) : 1.0;
    const Complex kf = K_F_closed(nl, z);
    const double b2 = std::norm(beta_inf);
    const double phi = w * w * kf.real() * b2;
    const double logarg = std::log(tau * ch);
    const double den = 1.0 + 2.0 * phi * logarg;
    if (!(den > 0)) throw std::domain_error("leading_profile_A: log-denominator not positive");
    const double phase = w * w * kf.imag() * b2 * L_func(logarg, phi);
    return beta_inf * std::polar(1.0 / std::sqrt(den), phase);
}

DeviationReport asymptotics_deviation(const ProfileParams& params, const Forcing& forcing,
                                      double tau_lo, double tau_hi, int steps_per_decade) {
    const auto tr = integrate_profile(params, forcing, tau_hi, steps_per_decade);

    // invert the asymptotic form over the last tenth of the trajectory and
    // average: |b|^2 = |beta|^2 / (1 - 2 Re k |beta|^2 log tau)
    const std::size_t n = tr.taus.size();
    const std::size_t start = n - std::max<std::size_t>(2, n / 10);
    Complex acc{0, 0};
    std::size_t count = 0;
    const double rk = params.kappa.real(), ik = params.kappa.imag();
    for (std::size_t i = start; i < n; ++i) {
        const double tau = tr.taus[i];
        const double m2 = std::norm(tr.betas[i]);
        const double den = 1.0 - 2.0 * rk * m2 * std::log(tau);
        if (!(den > 0)) continue;
        const double b2 = m2 / den;
        const double phase = std::arg(tr.betas[i]) - ik * b2 * L_func(tau, rk * b2);
        acc += std::polar(std::sqrt(b2), phase);
        ++count;
    }
    if (count == 0) throw std::runtime_error("asymptotics_deviation: tail fit failed");
    DeviationReport rep;
    rep.beta_inf = acc / double(count);

    for (std::size_t i = 0; i < n; ++i) {
        const double tau = tr.taus[i];
        if (tau < tau_lo || tau > tau_hi) continue;
        const double scaled =
            std::abs(tr.betas[i] - asymptotic_form(params.kappa, rep.beta_inf, tau)) *
            std::pow(std::log(tau), 1.5);
        rep.samples.emplace_back(tau, scaled);
        rep.max_scaled = std::max(rep.max_scaled, scaled);
    }
    return rep;
}

}  // namespace kgd
