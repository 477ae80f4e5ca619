#pragma once

#include "bykov/local_flow.hpp"
#include "bykov/model_core.hpp"
#include "bykov/real.hpp"

#include <cstddef>
#include <vector>

namespace bykov {

inline constexpr std::size_t kDefaultPairs = 12;

/// Beyond this many pairs the hitting times of typical systems exceed 1e18 and
/// the spacing of the working precision reaches whole time units.
inline constexpr std::size_t kMaxPairs = 30;

/// Hitting times of an orbit started on Out2 at t_0 = 0.
///
/// Even indices are hits on Out2, odd indices on Out1. With n pairs the sequence
/// holds t_0 .. t_{2n+1}: n complete V1/V2 round trips plus the next V1 sojourn.
struct HittingSequence {
    std::vector<Real> times;
    std::vector<SectionPoint> points;
    std::vector<Real> sojourns_v1; ///< t_{2i+1} - t_{2i}, i = 0..n
    std::vector<Real> sojourns_v2; ///< t_{2i+2} - t_{2i+1}, i = 0..n-1
    std::vector<Real> spins_v1;    ///< angle turned inside V1 on each visit
    std::vector<Real> spins_v2;    ///< angle turned inside V2 on each visit

    std::size_t pairs() const { return sojourns_v2.size(); }
    std::size_t last_index() const { return times.empty() ? 0 : times.size() - 1; }
};

/// Iterates psi21, phi1, psi12, phi2 from `q0` on Out2.
/// Throws DegenerateInput if z0 is 0 or 1 and ConstraintViolation for invalid `p`
/// or `n_pairs` outside [1, kMaxPairs].
HittingSequence generate_hitting_sequence(const SectionPoint& q0, const SystemParams& p,
                                          std::size_t n_pairs = kDefaultPairs);

struct SojournFractions {
    Real v1 = 0;
    Real v2 = 0;
};

/// Share of [0, t_upto] spent in each cylinder.
SojournFractions sojourn_fractions(const HittingSequence& h, std::size_t upto_index);

} // namespace bykov
