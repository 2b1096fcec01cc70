#include "kgd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "kgd/spectral.hpp"

namespace kgd {

void validate_config(const SolverConfig& cfg, const Grid1D& grid) {
    if (!(cfg.eps >= 0)) throw std::invalid_argument("eps must be >= 0");
    if (!(cfg.B > 1)) throw std::invalid_argument("B must be > 1");
    if (!(cfg.B < grid.L)) throw std::invalid_argument("data support must fit inside the grid");
    if (!(cfg.dt > 0)) throw std::invalid_argument("dt must be positive");
    if (!(cfg.T > 0)) throw std::invalid_argument("T must be positive");
    if (grid.L < cfg.T + cfg.B + 10)
        throw std::invalid_argument(
            "L must be at least T + B + 10: finite propagation speed keeps the support "
            "off the periodic seam only if the domain outruns the light cone");
    if (cfg.scheme == Scheme::Rk4Mol && cfg.dt > grid.dx() / std::numbers::pi)
        throw std::invalid_argument("rk4_mol requires dt <= dx/pi for stability");
    for (double p : cfg.norm_ps)
        if (!(p >= 1)) throw std::invalid_argument("norm p must be >= 1");
}

FieldState bump_data(const Grid1D& grid, double B, double eps, DataShape shape) {
    FieldState s;
    s.t = 0;
    s.u.assign(grid.N, 0.0);
    for (int k = 0; k < grid.N; ++k) {
        const double y = grid.x(k) / B;
        if (std::abs(y) < 1.0) s.u[k] = eps * std::exp(1.0 - 1.0 / (1.0 - y * y));
    }
    s.v = (shape == DataShape::BumpPair) ? s.u : std::vector<double>(grid.N, 0.0);
    return s;
}

void linear_step(FieldState& s, SpectralWorkspace& ws, double dt) {
    std::vector<std::complex<double>> uh, vh;
    ws.forward(s.u, uh);
    ws.forward(s.v, vh);
    ws.linear_propagator(uh, vh, dt);
    ws.inverse(uh, s.u);
    ws.inverse(vh, s.v);
    s.t += dt;
}

void nonlinear_step(FieldState& s, SpectralWorkspace& ws, const CubicNonlinearity& nl, double dt,
                    Exec exec) {
    std::vector<double> ux;
    ws.derivative(s.u, ux);
    nonlinear_rk4(s.u, s.v, ux, nl, dt, exec);
}

void step_strang(FieldState& s, SpectralWorkspace& ws, const CubicNonlinearity& nl, double dt,
                 Exec exec) {
    linear_step(s, ws, 0.5 * dt);
    nonlinear_step(s, ws, nl, dt, exec);
    linear_step(s, ws, 0.5 * dt);
    // the cubic term triples spectral support; prune the aliased upper third
    std::vector<std::complex<double>> uh, vh;
    ws.forward(s.u, uh);
    ws.forward(s.v, vh);
    ws.dealias(uh);
    ws.dealias(vh);
    ws.inverse(uh, s.u);
    ws.inverse(vh, s.v);
}

namespace {

// du = v, dv = u_xx - u + F(u, v, ux), all derivatives spectral
void mol_rhs(const std::vector<double>& u, const std::vector<double>& v, SpectralWorkspace& ws,
             const CubicNonlinearity& nl, Exec exec, std::vector<double>& du,
             std::vector<double>& dv) {
    const int n = ws.size();
    std::vector<std::complex<double>> uh;
    ws.forward(u, uh);
    std::vector<std::complex<double>> work(uh.size());
    for (std::size_t j = 0; j < uh.size(); ++j)
        work[j] = uh[j] * std::complex<double>(0, ws.xi(j));
    work.back() = 0;
    std::vector<double> ux;
    ws.inverse(work, ux);
    for (std::size_t j = 0; j < uh.size(); ++j) work[j] = -ws.xi(j) * ws.xi(j) * uh[j];
    std::vector<double> uxx;
    ws.inverse(work, uxx);
    du = v;
    dv.resize(n);
    eval_F_array(u, v, ux, nl, dv, exec);
    for (int i = 0; i < n; ++i) dv[i] += uxx[i] - u[i];
}

}  // namespace

void step_rk4_mol(FieldState& s, SpectralWorkspace& ws, const CubicNonlinearity& nl, double dt,
                  Exec exec) {
    const int n = ws.size();
    std::vector<double> k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, tu(n), tv(n);
    mol_rhs(s.u, s.v, ws, nl, exec, k1u, k1v);
    for (int i = 0; i < n; ++i) {
        tu[i] = s.u[i] + 0.5 * dt * k1u[i];
        tv[i] = s.v[i] + 0.5 * dt * k1v[i];
    }
    mol_rhs(tu, tv, ws, nl, exec, k2u, k2v);
    for (int i = 0; i < n; ++i) {
        tu[i] = s.u[i] + 0.5 * dt * k2u[i];
        tv[i] = s.v[i] + 0.5 * dt * k2v[i];
    }
    mol_rhs(tu, tv, ws, nl, exec, k3u, k3v);
    for (int i = 0; i < n; ++i) {
        tu[i] = s.u[i] + dt * k3u[i];
        tv[i] = s.v[i] + dt * k3v[i];
    }
    mol_rhs(tu, tv, ws, nl, exec, k4u, k4v);
    for (int i = 0; i < n; ++i) {
        s.u[i] += dt / 6.0 * (k1u[i] + 2 * k2u[i] + 2 * k3u[i] + k4u[i]);
        s.v[i] += dt / 6.0 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
    }
    s.t += dt;
}

double linear_energy(const FieldState& s, SpectralWorkspace& ws, double dx) {
    // computed in Fourier space with the same <xi> weight the propagator
    // rotates with, so the free flow conserves this exactly (incl. Nyquist)
    std::vector<std::complex<double>> uh, vh;
    ws.forward(s.u, uh);
    ws.forward(s.v, vh);
    const int n = int(s.u.size());
    double e = 0;
    for (int j = 0; j < ws.n_modes(); ++j) {
        const double mult = (j == 0 || 2 * j == n) ? 1.0 : 2.0;
        e += mult * (std::norm(vh[j]) + (1.0 + ws.xi(j) * ws.xi(j)) * std::norm(uh[j]));
    }
    return 0.5 * e * dx / n;
}

RunRecord run_simulation(const SolverConfig& cfg, const CubicNonlinearity& nl, const Grid1D& grid) {
    validate_config(cfg, grid);
    SpectralWorkspace ws(grid);
    RunRecord rec{grid, cfg, {}, {}};

    const long n_steps = std::lround(cfg.T / cfg.dt);
    std::set<long> snap_steps;
    for (double r : cfg.record_times)
        snap_steps.insert(std::clamp(std::lround(r / cfg.dt), 0L, n_steps));
    const long norm_every = std::max(1L, std::lround(cfg.norm_stride / cfg.dt));
    const double blow_up = 1e6 * std::max(cfg.eps, 1e-300);

    FieldState s = bump_data(grid, cfg.B, cfg.eps, cfg.shape);
    const double dx = grid.dx();
    std::vector<double> ux;

    auto record = [&](long step) {
        const bool want_norms = step % norm_every == 0 || step == n_steps;
        const bool want_snap = snap_steps.count(step) > 0;
        if (!want_norms && !want_snap) return;
        ws.derivative(s.u, ux);
        if (want_norms) {
            rec.norms.times.push_back(s.t);
            for (double p : cfg.norm_ps) {
                const double nu = lp_norm(s.u, dx, p, cfg.exec);
                rec.norms.u[p].push_back(nu);
                rec.norms.v[p].push_back(lp_norm(s.v, dx, p, cfg.exec));
                rec.norms.ux[p].push_back(lp_norm(ux, dx, p, cfg.exec));
                if (!(nu < blow_up) || !std::isfinite(nu)) throw Instability(s.t, nu);
            }
        }
        if (want_snap) rec.snapshots.push_back({s.t, s.u, s.v, ux});
    };

    record(0);
    for (long step = 1; step <= n_steps; ++step) {
        if (cfg.scheme == Scheme::StrangSplit) {
            step_strang(s, ws, nl, cfg.dt, cfg.exec);
            s.t = step * cfg.dt;  // avoid accumulated half-step rounding
        } else {
            step_rk4_mol(s, ws, nl, cfg.dt, cfg.exec);
            s.t = step * cfg.dt;
        }
        record(step);
    }
    return rec;
}

}  // namespace kgd
