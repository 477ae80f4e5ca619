#pragma once

#include "bykov/hitting_times.hpp"
#include "bykov/model_core.hpp"
#include "bykov/real.hpp"

#include <cstddef>
#include <vector>

namespace bykov {

/// Idealized representative of a hitting sequence.
///
/// T_seq obeys T~_i = delta T~_{i-1} - tau ln a exactly and stays summably close to the
/// pair durations T_i = t_{2i+2} - t_{2i}. Two anchorings are kept: t_even/t_odd add
/// `offset` = sum_k (T_k - T~_k) so that t_{2i} - t~_{2i} -> 0, while
/// t_even_zero/t_odd_zero start at t~_0 = 0.
struct AdjustedTimes {
    std::vector<Real> T;           ///< measured pair durations T_i
    std::vector<Real> T0_family;   ///< T~_0^{(i)}, i = 0..pairs-1
    Real T0 = 0;
    Real residual_tail_bound = 0;  ///< bound on |T0 - lim T~_0^{(i)}|
    std::vector<Real> T_seq;       ///< T~_i, i = 0..n-1
    std::vector<Real> t_even;      ///< t~_{2i}, i = 0..n
    std::vector<Real> t_odd;       ///< t~_{2i+1}, i = 0..n-1
    std::vector<Real> t_even_zero;
    std::vector<Real> t_odd_zero;
    Real offset = 0;

    /// t~_0, t~_1, ..., t~_{2n} with t~_0 = 0.
    std::vector<Real> zero_anchored() const;
    /// t~_0, t~_1, ..., t~_{2n} shifted by `offset`.
    std::vector<Real> offset_anchored() const;
};

/// Pair durations T_i = t_{2i+2} - t_{2i} for every complete pair.
std::vector<Real> pair_durations(const HittingSequence& h);

/// T~_0^{(i)}: T_i pulled back i steps through x -> (x + tau ln a) / delta.
/// Throws InsufficientData with fewer than 2 pairs.
std::vector<Real> backward_T0_family(const HittingSequence& h, const DerivedConstants& d);

/// Builds n adjusted pairs (1 <= n <= pairs); throws InsufficientData otherwise.
AdjustedTimes adjusted_sequence(const HittingSequence& h, const DerivedConstants& d, std::size_t n);

/// Same, with n = pairs.
AdjustedTimes adjusted_sequence(const HittingSequence& h, const DerivedConstants& d);

struct ShiftCheck {
    Real T0_shifted = 0;   ///< limit of the family rebuilt from T_N
    Real T_N_forward = 0;  ///< delta^N T~_0 - (sum_{j<N} delta^j) tau ln a
    Real max_dev = 0;      ///< largest of |T0_shifted - T_N_forward| and |T~_{0,N}^{(i)} - T0_shifted|
    Real bound = 0;        ///< sum_{j>0} |R_{j+N}| / delta^j plus a rounding allowance
};

/// Restarts the backward construction at index N. Throws InsufficientData unless
/// N < pairs - 2.
ShiftCheck shift_invariance_check(const HittingSequence& h, const DerivedConstants& d, std::size_t N);

} // namespace bykov
