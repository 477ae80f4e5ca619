// Randomized checks over many valid systems and seeds (fixed RNG seeds).

#include "bykov/adjusted_times.hpp"
#include "bykov/conjugacy.hpp"
#include "bykov/errors.hpp"
#include "bykov/historic_averages.hpp"
#include "bykov/hitting_times.hpp"
#include "bykov/invariant_metrics.hpp"
#include "reference.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bykov;
using namespace bykov::testing;

namespace {

SectionPoint random_seed(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> theta(0, 6.283), logz(-6, -0.05);
    return SectionPoint::make(Chart::Out2, theta(rng), logz(rng));
}

} // namespace

TEST_CASE("idealized lemma combinations are constant for any system") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p = random_params(rng);
        const DerivedConstants d = derive_constants(p);
        const HittingSequence h = generate_hitting_sequence(random_seed(rng), p, 6);
        const DiagnosticSeries s = full_diagnostics(h, p);
        const Real scale = h.times.back();
        for (std::size_t i = 1; i < s.lemma3.end(); ++i) {
            CHECK(std::fabs(s.lemma1[i] + d.log_a / p.E1) <= 1e-15L * scale);
            CHECK(std::fabs(s.lemma2[i]) <= 1e-15L * scale);
            CHECK(std::fabs(s.lemma3[i] + d.tau * d.log_a) <= 1e-15L * scale);
        }
        const Real w = (p.omega1 + d.gamma1 * p.omega2) / (1 + d.gamma1);
        for (Real v : s.ratio4.values) CHECK(std::fabs(v - w) <= 1e-15L * w * 64);
    }
}

TEST_CASE("even sojourn fraction is exact for any system") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p = random_params(rng);
        const DerivedConstants d = derive_constants(p);
        const HittingSequence h = generate_hitting_sequence(random_seed(rng), p, 5);
        for (std::size_t k = 2; k <= h.last_index(); k += 2)
            CHECK(std::fabs(sojourn_fractions(h, k).v2 - d.gamma1 / (1 + d.gamma1)) < 1e-12L);
    }
}

TEST_CASE("birkhoff averages stay within the observable range") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> val(-3, 3), expo(0.5, 4);
    for (int trial = 0; trial < 60; ++trial) {
        SystemParams p = random_params(rng);
        if (trial % 2) p.perturbation = PerturbationSpec{0.05L, 0.05L, 0.5L};
        const Real g1 = val(rng), g2 = val(rng);
        const ObservableKind kind = trial % 3 ? ObservableKind::Smooth : ObservableKind::PiecewiseConstant;
        const Observable g{kind, g1, g2, expo(rng), std::nullopt};
        const AverageSeries s = birkhoff_average(random_seed(rng), p, g, 9);
        const Real lo = std::min(g1, g2) - 1e-12L, hi = std::max(g1, g2) + 1e-12L;
        for (Real v : s.even_averages) CHECK((v >= lo && v <= hi));
        for (Real v : s.odd_averages) CHECK((v >= lo && v <= hi));
    }
}

TEST_CASE("idealized adjusted times coincide with the orbit") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams p = random_params(rng);
        const HittingSequence h = generate_hitting_sequence(random_seed(rng), p, 6);
        const AdjustedTimes a = adjusted_sequence(h, derive_constants(p));
        const std::vector<Real> z = a.zero_anchored();
        for (std::size_t k = 0; k < z.size(); ++k)
            CHECK(std::fabs(z[k] - h.times[k]) <= 1e-13L * std::max<Real>(1, h.times.back()));
    }
}

TEST_CASE("recovery roundtrip returns the seed height") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p = random_params(rng);
        const DerivedConstants d = derive_constants(p);
        const SectionPoint q0 = random_seed(rng);
        const AdjustedTimes a = adjusted_sequence(generate_hitting_sequence(q0, p, 4), d);
        const RecoveredPoint r = recover_point(a, p);
        CHECK(std::fabs(r.z0_log - q0.log_coord) <= 1e-10L * std::fabs(q0.log_coord));
        const Real rho1 = d.delta1 * (d.log_a + q0.log_coord);
        CHECK(std::fabs(r.rho1_log - rho1) <= 1e-10L * std::fabs(rho1));
    }
}

TEST_CASE("systems built by matching_params are conjugate") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> knob(0.3, 2.5);
    int checked = 0;
    while (checked < 50) {
        const SystemParams p = random_params(rng);
        SystemParams g;
        try {
            g = matching_params(p, knob(rng), knob(rng), knob(rng) * 0.05);
        } catch (const ConstraintViolation&) {
            continue;
        }
        const ConjugacyReport r = verify_conjugacy(random_seed(rng), p, g, 6, 1e-8L);
        CHECK(r.verdict);
        ++checked;
    }
}
