#pragma once

#include "bykov/model_core.hpp"
#include "bykov/real.hpp"

#include <cstddef>
#include <vector>

namespace bykov::oracle {

/// Hitting times found by integrating the cylinder vector fields numerically.
///
/// Independent of the closed-form maps: the state (rho, theta, z) is stepped with
/// classical RK4 in plain coordinates and each section crossing (z = 1 in V1,
/// rho = 1 in V2) is located by bisecting the last step. Only the idealized vector
/// fields are integrated; perturbation terms of `p` are ignored.
struct OdeOrbit {
    std::vector<Real> times;   ///< t_0 = 0, t_1, ...
    std::vector<Real> heights; ///< z on Out2 (even index) or rho on Out1 (odd index)
    std::vector<Real> angles;  ///< theta reduced to [0, 2 pi) at each crossing
    std::size_t steps = 0;
};

/// Integrates from (theta0, z0) on Out2 until `hits` crossings after t_0.
OdeOrbit integrate_orbit(const SystemParams& p, Real theta0, Real z0, std::size_t hits,
                         Real step = 1e-3L);

} // namespace bykov::oracle
