#include "bykov/hitting_times.hpp"

#include "bykov/errors.hpp"

#include <string>

namespace bykov {

HittingSequence generate_hitting_sequence(const SectionPoint& q0, const SystemParams& p,
                                          std::size_t n_pairs) {
    validate_params(p);
    if (n_pairs < 1 || n_pairs > kMaxPairs)
        throw ConstraintViolation("n_pairs in [1, " + std::to_string(kMaxPairs) + "] violated");
    if (q0.chart != Chart::Out2)
        throw DegenerateInput("generate_hitting_sequence: seed must lie on Out2");
    if (!(q0.log_coord < 0) || std::isinf(q0.log_coord))
        throw DegenerateInput("generate_hitting_sequence: seed height must be in (0, 1)");

    HittingSequence h;
    h.times.reserve(2 * n_pairs + 2);
    h.points.reserve(2 * n_pairs + 2);
    h.times.push_back(0);
    h.points.push_back(q0);

    CompensatedSum clock;
    SectionPoint current = q0;
    for (std::size_t i = 0; i <= n_pairs; ++i) {
        const SectionPoint entry1 = psi21(current, p);
        const Transit leg1 = phi1(entry1, p);
        clock.add(leg1.time);
        h.times.push_back(clock.value());
        h.points.push_back(leg1.point);
        h.sojourns_v1.push_back(leg1.time);
        h.spins_v1.push_back(leg1.point.theta_lifted - entry1.theta_lifted);
        if (i == n_pairs) break;

        const SectionPoint entry2 = psi12(leg1.point);
        const Transit leg2 = phi2(entry2, p);
        clock.add(leg2.time);
        h.times.push_back(clock.value());
        h.points.push_back(leg2.point);
        h.sojourns_v2.push_back(leg2.time);
        h.spins_v2.push_back(leg2.point.theta_lifted - entry2.theta_lifted);
        current = leg2.point;
    }
    return h;
}

SojournFractions sojourn_fractions(const HittingSequence& h, std::size_t upto_index) {
    if (upto_index == 0 || upto_index > h.last_index())
        throw InsufficientData("sojourn_fractions: index must be in [1, last hitting index]");
    CompensatedSum in_v1, in_v2;
    // hitting index k closes sojourn_v1[k/2] (odd k) or sojourn_v2[k/2 - 1] (even k)
    for (std::size_t k = 1; k <= upto_index; ++k) {
        if (k % 2 == 1)
            in_v1.add(h.sojourns_v1[k / 2]);
        else
            in_v2.add(h.sojourns_v2[k / 2 - 1]);
    }
    const Real total = in_v1.value() + in_v2.value();
    const Real v2 = in_v2.value() / total;
    return {1 - v2, v2};
}

} // namespace bykov
