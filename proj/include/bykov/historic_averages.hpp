#pragma once

#include "bykov/hitting_times.hpp"
#include "bykov/local_flow.hpp"
#include "bykov/model_core.hpp"
#include "bykov/real.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bykov {

enum class ObservableKind { PiecewiseConstant, Smooth };

/// A test function along orbits, described by its values at the two equilibria.
///
/// PiecewiseConstant: G = g_sigma1 on V1 and g_sigma2 on V2.
/// Smooth: G = g_j + (g_boundary - g_j) max(rho, z)^m on V_j, so G equals g_j on the
/// connection through the cylinder axis and g_boundary on the cylinder walls.
struct Observable {
    ObservableKind kind = ObservableKind::PiecewiseConstant;
    Real g_sigma1 = 0;
    Real g_sigma2 = 1;
    Real exponent = 2;                 ///< m, smooth kind only
    std::optional<Real> g_boundary;    ///< smooth kind only; midpoint of g_sigma1, g_sigma2 if unset

    Real boundary_value() const { return g_boundary.value_or((g_sigma1 + g_sigma2) / 2); }
};

/// Throws ConstraintViolation for a non-finite value, m <= 0, or a boundary value
/// outside [min(g1, g2), max(g1, g2)].
void validate_observable(const Observable& g);

struct PredictedLimits {
    Real even = 0; ///< limit along t_{2i}
    Real odd = 0;  ///< limit along t_{2i+1}
};

PredictedLimits predicted_limits(const DerivedConstants& d, const Observable& g);

/// Birkhoff averages (1/t_k) * integral_0^{t_k} G at the hitting times.
///
/// even_averages[i] is taken at t_{2i+2} and odd_averages[i] at t_{2i+1}.
struct AverageSeries {
    std::vector<Real> even_averages;
    std::vector<Real> odd_averages;
    std::vector<Real> even_times;
    std::vector<Real> odd_times;
    Real predicted_even = 0;
    Real predicted_odd = 0;

    static std::size_t even_hitting_index(std::size_t i) { return 2 * i + 2; }
    static std::size_t odd_hitting_index(std::size_t i) { return 2 * i + 1; }
};

/// Averages at every hitting index 1..upto_index of an existing sequence.
AverageSeries birkhoff_average(const HittingSequence& h, const SystemParams& p, const Observable& g,
                               std::size_t upto_index);

/// Generates the orbit of `q0` (on Out2) long enough to reach `upto_index`.
AverageSeries birkhoff_average(const SectionPoint& q0, const SystemParams& p, const Observable& g,
                               std::size_t upto_index);

/// integral_0^T exp(m max(-alpha t, ell + beta t)) dt with T = -ell / beta, by
/// composite Gauss-Legendre quadrature split at the kink.
Real leg_integral(Real alpha, Real beta, Real ell, Real m);

struct HistoricCertificate {
    bool historic = false;
    Real gap = 0;       ///< predicted_odd - predicted_even
    Real tail_even = 0;
    Real tail_odd = 0;
};

/// True iff the last averages of the two parities differ by more than `tol` and each
/// sits within `tol` of its predicted limit. Throws InsufficientData with fewer than
/// 4 entries per parity.
HistoricCertificate historic_certificate(const AverageSeries& s, Real tol);

} // namespace bykov
