#include "kgd/presets.hpp"

#include <stdexcept>

namespace kgd {

// gamma order: u^3, u u_t^2, u u_x^2, u u_t u_x, u^2 u_t, u_t^3, u_t u_x^2,
//              u^2 u_x, u_t^2 u_x, u_x^3
CubicNonlinearity preset(const std::string& name) {
    CubicNonlinearity nl{};
    if (name == "u2ut") {
        nl.gamma[4] = -1;
    } else if (name == "u2utux") {
        nl.gamma[4] = -1;
        nl.gamma[7] = -1;
    } else if (name == "utpux3") {
        // -(u_t + u_x)^3 = -u_t^3 - 3 u_t^2 u_x - 3 u_t u_x^2 - u_x^3
        nl.gamma[5] = -1;
        nl.gamma[8] = -3;
        nl.gamma[6] = -3;
        nl.gamma[9] = -1;
    } else if (name == "ux2ut") {
        nl.gamma[6] = -1;
    } else if (name == "ut3") {
        nl.gamma[5] = -1;
    } else if (name == "u3") {
        nl.gamma[0] = 1;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return nl;
}

std::vector<std::string> preset_names() {
    return {"u2ut", "u2utux", "utpux3", "ux2ut", "ut3", "u3"};
}

}  // namespace kgd
