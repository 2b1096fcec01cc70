#ifndef KGD_GRID_HPP
#define KGD_GRID_HPP

#include <stdexcept>

namespace kgd {

/// Uniform periodic grid on [-L, L) with N (power of two) nodes.
struct Grid1D {
    double L;
    int N;

    Grid1D(double half_length, int n_points) : L(half_length), N(n_points) {
        if (!(L > 0)) throw std::invalid_argument("Grid1D: L must be positive");
        if (N < 2 || (N & (N - 1)) != 0) throw std::invalid_argument("Grid1D: N must be a power of two");
    }
    double dx() const { return 2.0 * L / N; }
    double x(int k) const { return -L + k * dx(); }
};

}  // namespace kgd

#endif
