#include "bykov/local_flow.hpp"

#include "bykov/errors.hpp"

#include <cmath>
#include <string>

namespace bykov {

std::string_view to_string(Chart c) {
    switch (c) {
    case Chart::In1: return "In1";
    case Chart::Out1: return "Out1";
    case Chart::In2: return "In2";
    case Chart::Out2: return "Out2";
    }
    return "?";
}

namespace {

void require_chart(const SectionPoint& q, Chart expected, const char* op) {
    if (q.chart != expected)
        throw DegenerateInput(std::string(op) + ": expected a point on " +
                              std::string(to_string(expected)) + ", got " +
                              std::string(to_string(q.chart)));
}

// The section coordinate must lie strictly inside (0, 1): 0 is the boundary of the
// section, -inf is the invariant manifold (the orbit never leaves the cylinder).
void require_interior(Real log_coord, const char* op) {
    if (std::isnan(log_coord) || log_coord >= 0 || std::isinf(log_coord))
        throw DegenerateInput(std::string(op) + ": log-coordinate must be finite and < 0");
}

// Higher-order terms of one local map: a multiplicative correction to the
// radial/height coordinate and an additive correction to the angle.
struct Correction {
    Real log_factor = 0;
    Real angle = 0;
};

Correction higher_order_terms(Real amplitude, Real eps, Real delta, Real log_coord, Real theta,
                              const char* op) {
    if (amplitude == 0) return {};
    // S / x = c x^{delta eps} cos(theta), evaluated without forming x
    const Real relative = amplitude * std::exp(delta * eps * log_coord);
    const Real ratio = relative * std::cos(theta);
    if (ratio <= -1)
        throw DegenerateInput(std::string(op) + ": higher-order term cancels the leading term");
    return {std::log1p(ratio), amplitude * std::exp(delta * (1 + eps) * log_coord) * std::sin(theta)};
}

} // namespace

Transit phi1(const SectionPoint& q, const SystemParams& p) {
    require_chart(q, Chart::In1, "phi1");
    require_interior(q.log_coord, "phi1");
    const Real log_z = q.log_coord;
    const Real delta1 = p.C1 / p.E1;

    Correction s;
    if (p.perturbation) s = higher_order_terms(p.perturbation->c1, p.perturbation->eps, delta1, log_z, q.theta, "phi1");

    const Real log_rho = delta1 * log_z + s.log_factor;
    const Real theta = q.theta_lifted - (p.omega1 / p.E1) * log_z + s.angle;
    return {SectionPoint::make(Chart::Out1, theta, log_rho), -log_z / p.E1};
}

Transit phi2(const SectionPoint& q, const SystemParams& p) {
    require_chart(q, Chart::In2, "phi2");
    require_interior(q.log_coord, "phi2");
    const Real log_rho = q.log_coord;
    const Real delta2 = p.C2 / p.E2;

    Correction s;
    if (p.perturbation) s = higher_order_terms(p.perturbation->c2, p.perturbation->eps, delta2, log_rho, q.theta, "phi2");

    const Real log_z = delta2 * log_rho + s.log_factor;
    const Real theta = q.theta_lifted - (p.omega2 / p.E2) * log_rho + s.angle;
    return {SectionPoint::make(Chart::Out2, theta, log_z), -log_rho / p.E2};
}

SectionPoint psi12(const SectionPoint& q) {
    require_chart(q, Chart::Out1, "psi12");
    return SectionPoint::make(Chart::In2, q.theta_lifted, q.log_coord);
}

SectionPoint psi21(const SectionPoint& q, const SystemParams& p) {
    require_chart(q, Chart::Out2, "psi21");
    return SectionPoint::make(Chart::In1, q.theta / p.a, std::log(p.a) + q.log_coord);
}

Transit poincare(const SectionPoint& q, const SystemParams& p) {
    require_chart(q, Chart::In1, "poincare");
    const auto first = phi1(q, p);
    const auto second = phi2(psi12(first.point), p);
    return {psi21(second.point, p), first.time + second.time};
}

Real time_to_exit(const FlowState& s, const SystemParams& p) {
    return s.cylinder == Cylinder::V1 ? -s.z_log / p.E1 : -s.rho_log / p.E2;
}

FlowState flow_at(Real t, const FlowState& s, const SystemParams& p) {
    const Real exit = time_to_exit(s, p);
    if (!(t >= 0) || t > exit + 64 * kEpsilon * std::fabs(exit))
        throw OutOfSojourn("flow_at: t outside [0, exit time] of the current cylinder");
    FlowState out = s;
    if (s.cylinder == Cylinder::V1) {
        out.rho_log = s.rho_log - p.C1 * t;
        out.z_log = s.z_log + p.E1 * t;
        out.theta_lifted = s.theta_lifted + p.omega1 * t;
    } else {
        out.rho_log = s.rho_log + p.E2 * t;
        out.z_log = s.z_log - p.C2 * t;
        out.theta_lifted = s.theta_lifted + p.omega2 * t;
    }
    return out;
}

} // namespace bykov
