#pragma once

#include "bykov/hitting_times.hpp"
#include "bykov/model_core.hpp"
#include "bykov/real.hpp"

#include <cstddef>
#include <vector>

namespace bykov {

/// A sequence whose natural index starts at `first` rather than 0.
struct IndexedSeries {
    std::size_t first = 0;
    std::vector<Real> values;

    bool contains(std::size_t i) const { return i >= first && i - first < values.size(); }
    /// One past the last index.
    std::size_t end() const { return first + values.size(); }
    bool empty() const { return values.empty(); }
    Real operator[](std::size_t i) const { return values.at(i - first); }
    Real back() const { return values.back(); }
};

/// Convergent combinations of consecutive hitting times.
///
///   lemma1[i] = (t_{2i+1} - t_{2i}) - gamma2 (t_{2i} - t_{2i-1})       -> -ln(a)/E1
///   lemma2[i] = (t_{2i+2} - t_{2i+1}) - gamma1 (t_{2i+1} - t_{2i})     -> 0
///   lemma3[i] = (t_{2i+2} - t_{2i}) - delta (t_{2i} - t_{2i-2})        -> -tau ln a
///   residuals[i] = lemma3[i] + tau ln a
///   ratio1[i] = (t_{2i+2} - t_{2i+1}) / (t_{2i+1} - t_{2i})            -> gamma1
///   ratio2[i] = (t_{2i+1} - t_{2i}) / (t_{2i} - t_{2i-1})              -> gamma2
///   ratio3[i] = (t_{2i+2} - t_{2i}) / (t_{2i} - t_{2i-2})              -> delta
///   ratio4[i] = (omega1 dt_V1 + omega2 dt_V2) / (t_{2i+2} - t_{2i})    -> (omega1 + gamma1 omega2)/(1 + gamma1)
struct DiagnosticSeries {
    IndexedSeries lemma1, lemma2, lemma3, residuals;
    IndexedSeries ratio1, ratio2, ratio3, ratio4;
};

/// Needs at least 3 pairs; throws InsufficientData otherwise.
DiagnosticSeries lemma_diagnostics(const HittingSequence& h, const DerivedConstants& d);

/// Needs at least 2 pairs; throws InsufficientData otherwise.
DiagnosticSeries corollary_ratios(const HittingSequence& h, const SystemParams& p);

/// Both of the above merged into one series set.
DiagnosticSeries full_diagnostics(const HittingSequence& h, const SystemParams& p);

/// sup over i >= from of (i |R_i|)^{1/i}.
Real root_test_statistic(const IndexedSeries& residuals, std::size_t from);

/// Sum of i |R_i| over from < i < end.
Real weighted_residual_tail(const IndexedSeries& residuals, std::size_t from);

/// Recovers the invariant tuple from a hitting sequence alone (no SystemParams).
///
/// delta is read off the affine recurrence T_i = delta T_{i-1} + c by a secant on
/// three consecutive pair durations, gamma1 from the last V2/V1 sojourn ratio, tau ln a
/// from the recurrence constant, and omega1 + gamma1 omega2 from the angle turned per
/// pair. Needs at least 5 pairs (InsufficientData); throws NonConvergent when the last
/// three per-index estimates of any component spread by more than 1e-3 of their mean.
InvariantTuple estimate_invariants(const HittingSequence& h);

} // namespace bykov
