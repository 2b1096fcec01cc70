#ifndef KGD_PRESETS_HPP
#define KGD_PRESETS_HPP

#include <string>
#include <vector>

#include "kgd/nonlinearity.hpp"

namespace kgd {

/// Named cubic nonlinearities used throughout the tests and the CLI:
///   "u2ut"    -u^2 u_t
///   "u2utux"  -u^2 (u_t + u_x)
///   "utpux3"  -(u_t + u_x)^3
///   "ux2ut"   -u_x^2 u_t
///   "ut3"     -u_t^3
///   "u3"      u^3
/// Throws std::invalid_argument for an unknown name.
CubicNonlinearity preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace kgd

#endif
