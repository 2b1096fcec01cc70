#ifndef KGD_SOLVER_HPP
#define KGD_SOLVER_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgd/grid.hpp"
#include "kgd/kernels.hpp"
#include "kgd/nonlinearity.hpp"

namespace kgd {

class Instability : public std::runtime_error {
  public:
    Instability(double t, double norm)
        : std::runtime_error("solution norm " + std::to_string(norm) + " exceeded blow-up bound at t=" + std::to_string(t)),
          time(t), norm_value(norm) {}
    double time;
    double norm_value;
};

/// (u, du/dt) at the grid nodes at one time.
struct FieldState {
    double t = 0;
    std::vector<double> u;
    std::vector<double> v;
};

struct Snapshot {
    double t;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> ux;  // spectral derivative, stored so analysis never re-plans
};

enum class Scheme { StrangSplit, Rk4Mol };
enum class DataShape { Bump, BumpPair };

struct SolverConfig {
    double eps = 0.1;
    double B = 10;
    double dt = 0.02;
    double T = 1000;
    Scheme scheme = Scheme::StrangSplit;
    DataShape shape = DataShape::Bump;
    std::vector<double> record_times;          // snapshot requests, matched to the step grid
    std::vector<double> norm_ps = {2, 4};      // p's for the norm time series
    double norm_stride = 1.0;                  // record norms every ~stride time units
    Exec exec = Exec::Parallel;
};

/// Validates the config against the grid; throws std::invalid_argument with a
/// reason on failure. Enforces L >= T + B + 10 (finite propagation speed keeps
/// the support away from the periodic seam) and dt <= dx/pi for rk4_mol.
void validate_config(const SolverConfig& cfg, const Grid1D& grid);

/// Smooth compactly supported data: u = eps * exp(1 - 1/(1-(x/B)^2)) on |x|<B,
/// zero outside; v = 0 for Bump, v = u for BumpPair.
FieldState bump_data(const Grid1D& grid, double B, double eps, DataShape shape = DataShape::Bump);

class SpectralWorkspace;

/// One step of the exact linear Klein-Gordon flow (in place).
void linear_step(FieldState& s, SpectralWorkspace& ws, double dt);
/// Pointwise RK4 substep of v' = F(u, v, ux) with u, ux frozen (in place on v).
void nonlinear_step(FieldState& s, SpectralWorkspace& ws, const CubicNonlinearity& nl, double dt,
                    Exec exec = Exec::Parallel);
/// Strang composition: linear(dt/2), nonlinear(dt), linear(dt/2), then 2/3 dealias.
void step_strang(FieldState& s, SpectralWorkspace& ws, const CubicNonlinearity& nl, double dt,
                 Exec exec = Exec::Parallel);
/// Classical RK4 on the full semidiscrete system u_t = v, v_t = u_xx - u + F.
void step_rk4_mol(FieldState& s, SpectralWorkspace& ws, const CubicNonlinearity& nl, double dt,
                  Exec exec = Exec::Parallel);

struct NormSeries {
    std::vector<double> times;
    // key: p; values aligned with times
    std::map<double, std::vector<double>> u, v, ux;
};

struct RunRecord {
    Grid1D grid;
    SolverConfig config;
    std::vector<Snapshot> snapshots;
    NormSeries norms;
};

/// Runs the Cauchy problem from bump data to T, recording snapshots at the
/// step times closest to config.record_times and norm series on the stride.
/// Throws Instability if any recorded norm exceeds 1e6 * eps.
RunRecord run_simulation(const SolverConfig& cfg, const CubicNonlinearity& nl, const Grid1D& grid);

/// Discrete linear energy 1/2 * integral of (v^2 + ux^2 + u^2).
double linear_energy(const FieldState& s, SpectralWorkspace& ws, double dx);

}  // namespace kgd

#endif
