#include "kgd/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

namespace kgd {

namespace {
std::mutex plan_mutex;  // fftw planning is not thread-safe
}

SpectralWorkspace::SpectralWorkspace(const Grid1D& grid) : n_(grid.N) {
    xi_.resize(n_modes());
    for (int j = 0; j < n_modes(); ++j) xi_[j] = std::numbers::pi * j / grid.L;
    real_buf_.resize(n_);
    cplx_buf_.resize(n_modes());
    std::lock_guard lock(plan_mutex);
    plan_fwd_ = fftw_plan_dft_r2c_1d(n_, real_buf_.data(),
                                     reinterpret_cast<fftw_complex*>(cplx_buf_.data()),
                                     FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(n_, reinterpret_cast<fftw_complex*>(cplx_buf_.data()),
                                     real_buf_.data(), FFTW_ESTIMATE);
}

SpectralWorkspace::~SpectralWorkspace() {
    std::lock_guard lock(plan_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

void SpectralWorkspace::forward(const std::vector<double>& in,
                                std::vector<std::complex<double>>& out) {
    std::memcpy(real_buf_.data(), in.data(), n_ * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    out = cplx_buf_;
}

void SpectralWorkspace::inverse(const std::vector<std::complex<double>>& in,
                                std::vector<double>& out) {
    cplx_buf_ = in;
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    out.resize(n_);
    const double scale = 1.0 / n_;
    for (int i = 0; i < n_; ++i) out[i] = real_buf_[i] * scale;
}

void SpectralWorkspace::derivative(const std::vector<double>& in, std::vector<double>& out) {
    std::vector<std::complex<double>> spec;
    forward(in, spec);
    for (int j = 0; j < n_modes(); ++j) spec[j] *= std::complex<double>(0, xi_[j]);
    spec[n_modes() - 1] = 0;  // Nyquist has no well-defined odd derivative
    inverse(spec, out);
}

void SpectralWorkspace::linear_propagator(std::vector<std::complex<double>>& uh,
                                          std::vector<std::complex<double>>& vh,
                                          double dt) const {
    for (int j = 0; j < n_modes(); ++j) {
        const double w = std::sqrt(1.0 + xi_[j] * xi_[j]);
        const double c = std::cos(w * dt), s = std::sin(w * dt);
        const auto u0 = uh[j], v0 = vh[j];
        uh[j] = c * u0 + s / w * v0;
        vh[j] = -w * s * u0 + c * v0;
    }
}

void SpectralWorkspace::dealias(std::vector<std::complex<double>>& spec) const {
    for (int j = n_ / 3 + 1; j < n_modes(); ++j) spec[j] = 0;
}

}  // namespace kgd
