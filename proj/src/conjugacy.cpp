#include "bykov/conjugacy.hpp"

#include "bykov/errors.hpp"
#include "bykov/hitting_times.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bykov {

RecoveredPoint recover_point(std::span<const Real> times, const SystemParams& p) {
    if (times.size() < 3) throw InsufficientData("recover_point: needs t~_0, t~_1, t~_2");
    const Real t0 = times[0], t1 = times[1], t2 = times[2];
    if (!(t1 > t0) || !(t2 > t1)) throw InvalidTimes("recover_point: requires t~_0 < t~_1 < t~_2");
    const Real first = t1 - t0, second = t2 - t1;

    const DerivedConstants d = derive_constants(p);
    const Real combo = p.omega1 + d.gamma1 * p.omega2;
    RecoveredPoint r;
    r.z0_log = -p.E1 * first - d.log_a;
    r.rho1_log = -p.E2 * second;
    r.theta0 = combo * ((t2 - t0) / (d.gamma1 + 1) - second / d.gamma1);
    r.theta0_reduced = reduce_angle(r.theta0);
    return r;
}

RecoveredPoint recover_point(const AdjustedTimes& t_adj, const SystemParams& p) {
    const std::vector<Real> t = t_adj.zero_anchored();
    return recover_point(std::span<const Real>(t), p);
}

namespace {

void require_matching(Real deviation) {
    if (deviation > kInvariantMatchTolerance)
        throw InvariantMismatch("invariant tuples differ (max relative deviation " +
                                std::to_string(static_cast<double>(deviation)) + ")");
}

} // namespace

RecoveredPoint map_H(const SectionPoint& q0, const SystemParams& p, const SystemParams& g,
                     std::size_t n_pairs) {
    validate_params(g);
    require_matching(max_relative_deviation(invariant_tuple(p), invariant_tuple(g)));
    const HittingSequence h = generate_hitting_sequence(q0, p, n_pairs);
    return recover_point(adjusted_sequence(h, derive_constants(p)), g);
}

ConjugacyReport verify_conjugacy(const SectionPoint& q0, const SystemParams& p, const SystemParams& g,
                                 std::size_t n_pairs, Real tol, ConjugacyMode mode) {
    validate_params(p);
    validate_params(g);
    if (!(tol > 0)) throw ConstraintViolation("tolerance > 0 violated");

    ConjugacyReport r;
    r.target_params = g;
    r.tolerance = tol;
    r.invariant_deviation = max_relative_deviation(invariant_tuple(p), invariant_tuple(g));
    r.invariants_match = r.invariant_deviation <= kInvariantMatchTolerance;
    if (mode == ConjugacyMode::Strict) require_matching(r.invariant_deviation);

    const HittingSequence h = generate_hitting_sequence(q0, p, n_pairs);
    const AdjustedTimes adj = adjusted_sequence(h, derive_constants(p));
    r.adjusted_times = adj.zero_anchored();
    r.image_point = recover_point(std::span<const Real>(r.adjusted_times), g);

    const HittingSequence hg = generate_hitting_sequence(r.image_point.seed(), g, n_pairs);
    r.charts_match = true;
    for (std::size_t i = 0; i < r.adjusted_times.size(); ++i)
        r.charts_match = r.charts_match && hg.points[i].chart == h.points[i].chart;

    r.first_failing_pair = n_pairs;
    bool within = true;
    for (std::size_t i = 0; i < r.adjusted_times.size(); ++i) {
        const Real dev = std::fabs(hg.times[i] - r.adjusted_times[i]);
        r.image_times.push_back(hg.times[i]);
        r.time_deviations.push_back(dev);
        r.max_dev = std::max(r.max_dev, dev);
        if (!(dev < tol * std::max<Real>(1, std::fabs(r.adjusted_times[i])))) {
            within = false;
            // index 2i+1 and 2i+2 belong to pair i
            r.first_failing_pair = std::min(r.first_failing_pair, i == 0 ? 0 : (i - 1) / 2);
        }
    }
    r.verdict = r.invariants_match && r.charts_match && within;
    return r;
}

} // namespace bykov
