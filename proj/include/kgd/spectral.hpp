#ifndef KGD_SPECTRAL_HPP
#define KGD_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "kgd/grid.hpp"

namespace kgd {

/// FFTW-backed real transforms and Fourier-side operators for one grid.
/// Owns its plans; not shareable across threads, but independent instances
/// may be used concurrently (plan creation is internally serialized).
class SpectralWorkspace {
  public:
    explicit SpectralWorkspace(const Grid1D& grid);
    ~SpectralWorkspace();
    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    int size() const { return n_; }
    int n_modes() const { return n_ / 2 + 1; }
    /// Wavenumber of mode j: xi_j = pi j / L.
    double xi(int j) const { return xi_[j]; }

    void forward(const std::vector<double>& in, std::vector<std::complex<double>>& out);
    void inverse(const std::vector<std::complex<double>>& in, std::vector<double>& out);

    /// Spectral first derivative (Nyquist mode zeroed).
    void derivative(const std::vector<double>& in, std::vector<double>& out);

    /// Exact propagator of u_tt = u_xx - u over time dt, in place on the
    /// spectra of (u, v): with w = sqrt(1 + xi^2),
    ///   u^ <- cos(w dt) u^ + sin(w dt)/w v^,  v^ <- -w sin(w dt) u^ + cos(w dt) v^.
    void linear_propagator(std::vector<std::complex<double>>& uh,
                           std::vector<std::complex<double>>& vh, double dt) const;

    /// 2/3-rule mask: zero modes with j > N/3.
    void dealias(std::vector<std::complex<double>>& spec) const;

  private:
    int n_;
    std::vector<double> xi_;
    std::vector<double> real_buf_;
    std::vector<std::complex<double>> cplx_buf_;
    void* plan_fwd_;  // fftw_plan
    void* plan_inv_;
};

}  // namespace kgd

#endif
