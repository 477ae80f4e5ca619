#pragma once

#include "bykov/real.hpp"

#include <optional>

namespace bykov {

/// Amplitudes of the higher-order terms of the local maps.
///
/// The family is S1 = c1 z^{delta1 (1+eps)} cos(theta), S2 = c1 z^{delta1 (1+eps)} sin(theta)
/// near sigma_1, and the same shape with c2 and rho near sigma_2. c1 = c2 = 0 is the
/// idealized model.
struct PerturbationSpec {
    Real c1 = 0;
    Real c2 = 0;
    Real eps = 0.5L;

    bool idealized() const { return c1 == 0 && c2 == 0; }
    friend bool operator==(const PerturbationSpec&, const PerturbationSpec&) = default;
};

/// Eigenvalue data of the two saddle-foci plus the transition coefficient.
///
/// sigma_1 has eigenvalues -C1 +- i omega1 and E1; sigma_2 has E2 +- i omega2 and -C2.
struct SystemParams {
    Real C1 = 0;
    Real E1 = 0;
    Real omega1 = 0;
    Real C2 = 0;
    Real E2 = 0;
    Real omega2 = 0;
    Real a = 0;
    std::optional<PerturbationSpec> perturbation;

    bool idealized() const { return !perturbation || perturbation->idealized(); }
    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct DerivedConstants {
    Real gamma1 = 0; ///< C1 / E2
    Real gamma2 = 0; ///< C2 / E1
    Real delta1 = 0; ///< C1 / E1
    Real delta2 = 0; ///< C2 / E2
    Real delta = 0;  ///< gamma1 * gamma2 = delta1 * delta2
    Real K = 0;      ///< (omega1 + gamma1 omega2) / E1
    Real tau = 0;    ///< (1 + gamma1) / E1
    Real log_a = 0;  ///< natural log of the transition coefficient
};

/// The four conjugacy invariants.
struct InvariantTuple {
    Real gamma1 = 0;
    Real gamma2 = 0;
    Real omega_combo = 0; ///< omega1 + gamma1 omega2
    Real tau_log_a = 0;   ///< tau * ln a, always negative
};

/// Returns `p` unchanged when every model inequality holds.
/// Throws ConstraintViolation naming the first violated inequality otherwise.
SystemParams validate_params(SystemParams p);

DerivedConstants derive_constants(const SystemParams& p);

InvariantTuple invariant_tuple(const SystemParams& p);

/// Largest componentwise relative deviation between two tuples.
Real max_relative_deviation(const InvariantTuple& x, const InvariantTuple& y);

/// Builds a second system with the same invariant tuple as `p`.
///
/// The four invariant equations leave a three-parameter family; (E1_bar, E2_bar,
/// omega2_bar) pick the member. The perturbation settings of `p` is carried over.
/// Throws ConstraintViolation if the solved system is not a valid model.
SystemParams matching_params(const SystemParams& p, Real E1_bar, Real E2_bar, Real omega2_bar);

} // namespace bykov
