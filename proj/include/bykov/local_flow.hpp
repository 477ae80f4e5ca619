#pragma once

#include "bykov/model_core.hpp"
#include "bykov/real.hpp"

#include <string_view>

namespace bykov {

/// Upper components of the four cross sections.
///
/// In1 is the wall of V1 and Out1 its top; In2 is the top of V2 and Out2 its wall.
enum class Chart { In1, Out1, In2, Out2 };

std::string_view to_string(Chart c);

/// A point on one of the cross sections, stored in log-space.
///
/// `log_coord` is ln z on In1/Out2 and ln rho on Out1/In2; the third cylindrical
/// coordinate is 1 on the section. `theta_lifted` is the unreduced angle produced
/// by the last map applied; `theta` is its reduction into [0, 2 pi).
struct SectionPoint {
    Chart chart = Chart::Out2;
    Real theta_lifted = 0;
    Real theta = 0;
    Real log_coord = 0;

    static SectionPoint make(Chart chart, Real theta_lifted, Real log_coord) {
        return {chart, theta_lifted, reduce_angle(theta_lifted), log_coord};
    }
};

/// Result of a map that takes time: the landing point and the time spent.
struct Transit {
    SectionPoint point;
    Real time = 0;
};

/// Phi_1^+: In1 -> Out1 through V1. Time -ln z / E1, ln rho' = delta1 ln z (+ S1).
Transit phi1(const SectionPoint& q, const SystemParams& p);

/// Phi_2^+: In2 -> Out2 through V2. Time -ln rho / E2, ln z' = delta2 ln rho (+ T2).
Transit phi2(const SectionPoint& q, const SystemParams& p);

/// Psi_{1->2}^+, the identity transition Out1 -> In2.
SectionPoint psi12(const SectionPoint& q);

/// Psi_{2->1}^+: Out2 -> In1, (theta, z) -> (theta / a, a z). Instantaneous.
///
/// Acts on the reduced angle of `q`, so the composition with phi1/phi2 reproduces
/// the first return map (1/a)[(-K ln z + theta) mod 2 pi].
SectionPoint psi21(const SectionPoint& q, const SystemParams& p);

/// First return map In1 -> In1, psi21 . phi2 . psi12 . phi1.
Transit poincare(const SectionPoint& q, const SystemParams& p);

enum class Cylinder { V1, V2 };

/// A point inside one of the linearizing cylinders, in log-space.
struct FlowState {
    Cylinder cylinder = Cylinder::V1;
    Real rho_log = 0;
    Real z_log = 0;
    Real theta_lifted = 0;
};

/// Time left before `s` leaves its cylinder (z = 1 in V1, rho = 1 in V2).
Real time_to_exit(const FlowState& s, const SystemParams& p);

/// Linear flow of the current cylinder evaluated at time `t` from `s`.
/// Throws OutOfSojourn if `t` is negative or beyond the exit time.
FlowState flow_at(Real t, const FlowState& s, const SystemParams& p);

} // namespace bykov
