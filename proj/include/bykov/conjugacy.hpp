#pragma once

#include "bykov/adjusted_times.hpp"
#include "bykov/local_flow.hpp"
#include "bykov/model_core.hpp"
#include "bykov/real.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bykov {

/// Section coordinates read back from adjusted times.
struct RecoveredPoint {
    Real z0_log = 0;      ///< ln z_0 on Out2
    Real rho1_log = 0;    ///< ln rho_1 on Out1
    Real theta0 = 0;      ///< angle formula evaluated at i = 0, unreduced
    Real theta0_reduced = 0;

    /// The recovered point as a seed on Out2.
    SectionPoint seed() const { return SectionPoint::make(Chart::Out2, theta0, z0_log); }
};

/// Recovers (z_0, rho_1, theta_0) from t~_0, t~_1, t~_2 of `times` (zero-anchored):
///   ln z_0   = -E1 t~_1 - ln a
///   ln rho_1 = -E2 (t~_2 - t~_1)
///   theta_0  = (omega1 + gamma1 omega2) [ (t~_2 - t~_0)/(gamma1 + 1) - (t~_2 - t~_1)/gamma1 ]
/// Throws InvalidTimes if t~_1 <= t~_0 or t~_2 <= t~_1, InsufficientData if fewer
/// than three times are given.
RecoveredPoint recover_point(std::span<const Real> times, const SystemParams& p);
RecoveredPoint recover_point(const AdjustedTimes& t_adj, const SystemParams& p);

/// Invariant tuples closer than this (max relative deviation) count as equal.
inline constexpr Real kInvariantMatchTolerance = 1e-9L;

/// H(P): adjusted times of the p-orbit of `q0`, read back as a point of system `g`.
/// Throws InvariantMismatch if the invariant tuples of p and g differ.
RecoveredPoint map_H(const SectionPoint& q0, const SystemParams& p, const SystemParams& g,
                     std::size_t n_pairs = kDefaultPairs);

enum class ConjugacyMode {
    Strict,     ///< mismatched invariants raise InvariantMismatch
    Diagnostic, ///< mismatched invariants are reported and force a false verdict
};

struct ConjugacyReport {
    SystemParams target_params;
    RecoveredPoint image_point;
    std::vector<Real> adjusted_times;  ///< t~_i of the p-orbit, zero-anchored
    std::vector<Real> image_times;     ///< hitting times of the g-orbit of H(P)
    std::vector<Real> time_deviations; ///< |t_bar_i - t~_i|
    Real max_dev = 0;
    Real tolerance = 0;
    Real invariant_deviation = 0;
    bool invariants_match = false;
    bool charts_match = false;
    /// First pair index whose deviations fail the tolerance, or n_pairs if none does.
    std::size_t first_failing_pair = 0;
    bool verdict = false;
};

/// Follows H(P) under g and compares its hitting times with the adjusted times of P.
///
/// The verdict requires matching invariants, charts alternating identically, and
/// every deviation below tol * max(1, |t~_i|).
ConjugacyReport verify_conjugacy(const SectionPoint& q0, const SystemParams& p, const SystemParams& g,
                                 std::size_t n_pairs, Real tol,
                                 ConjugacyMode mode = ConjugacyMode::Strict);

} // namespace bykov
