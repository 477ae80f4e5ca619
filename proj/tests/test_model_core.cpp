#include "bykov/errors.hpp"
#include "bykov/model_core.hpp"
#include "reference.hpp"

#include <doctest.h>

#include <random>

using namespace bykov;
using bykov::testing::reference;

namespace {

std::string violation_of(SystemParams p) {
    try {
        validate_params(p);
    } catch (const ConstraintViolation& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("reference parameters validate unchanged") {
    const SystemParams p = reference();
    CHECK(validate_params(p) == p);
}

TEST_CASE("each inequality is named when violated") {
    SystemParams p = reference();
    p.C1 = 1;
    CHECK(violation_of(p) == "C1 > E1 violated");
    p = reference();
    p.a = 1;
    CHECK(violation_of(p) == "a in (0,1) violated");
    p = reference();
    p.a = 0;
    CHECK(violation_of(p) == "a in (0,1) violated");
    p = reference();
    p.C2 = 1.5L;
    CHECK(violation_of(p) == "C2 > E2 violated");
    p = reference();
    p.omega2 = 0;
    CHECK(violation_of(p) == "omega2 > 0 violated");
    p = reference();
    p.E1 = std::nan("");
    CHECK(violation_of(p) == "all parameters finite violated");
    p = reference();
    p.perturbation = PerturbationSpec{0.1L, 0.1L, 1};
    CHECK(violation_of(p) == "eps in (0,1) violated");
    p.perturbation = PerturbationSpec{-0.1L, 0.1L, 0.5L};
    CHECK(violation_of(p) == "c1 >= 0 violated");
}

TEST_CASE("derived constants of the reference system") {
    const DerivedConstants d = derive_constants(reference());
    CHECK(d.gamma1 == doctest::Approx(4.0 / 3).epsilon(1e-15));
    CHECK(d.gamma2 == 3);
    CHECK(d.delta1 == 2);
    CHECK(d.delta2 == 2);
    CHECK(d.delta == doctest::Approx(4).epsilon(1e-15));
    CHECK(d.K == doctest::Approx(11.0 / 3).epsilon(1e-15));
    CHECK(d.tau == doctest::Approx(7.0 / 3).epsilon(1e-15));
}

TEST_CASE("symmetric system has equal ratios") {
    const DerivedConstants d = derive_constants({2, 1, 1, 2, 1, 1, 0.3L, std::nullopt});
    CHECK(d.gamma1 == 2);
    CHECK(d.gamma2 == 2);
    CHECK(d.delta1 == 2);
    CHECK(d.delta2 == 2);
    CHECK(d.delta == 4);
}

TEST_CASE("invariant tuple of the reference system") {
    const InvariantTuple t = invariant_tuple(reference());
    CHECK(std::fabs(t.gamma1 - 4.0L / 3) < 1e-18L);
    CHECK(t.gamma2 == 3);
    CHECK(std::fabs(t.omega_combo - 11.0L / 3) < 1e-18L);
    CHECK(std::fabs(t.tau_log_a - bykov::testing::kTauLogA) < 1e-18L);

    SystemParams near_one = reference();
    near_one.a = 0.999L;
    CHECK(static_cast<double>(invariant_tuple(near_one).tau_log_a) == doctest::Approx(-0.002334).epsilon(1e-3));
}

TEST_CASE("perturbation does not enter the invariant tuple") {
    SystemParams q = reference();
    q.perturbation = PerturbationSpec{0.3L, 0.2L, 0.25L};
    CHECK(max_relative_deviation(invariant_tuple(q), invariant_tuple(reference())) == 0);
}

TEST_CASE("matching_params solves the invariant equations") {
    const SystemParams q = matching_params(reference(), 2, 3, 1);
    CHECK(q.C1 == doctest::Approx(4).epsilon(1e-15));
    CHECK(q.E1 == 2);
    CHECK(q.omega1 == doctest::Approx(7.0 / 3).epsilon(1e-15));
    CHECK(q.C2 == 6);
    CHECK(q.E2 == 3);
    CHECK(q.omega2 == 1);
    CHECK(q.a == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(max_relative_deviation(invariant_tuple(q), invariant_tuple(reference())) < 1e-15L);

    const SystemParams same = matching_params(reference(), 1, 1.5L, 2);
    CHECK(std::fabs(same.C1 - 2) < 1e-18L);
    CHECK(std::fabs(same.C2 - 3) < 1e-18L);
    CHECK(std::fabs(same.omega1 - 1) < 1e-18L);
    CHECK(std::fabs(same.a - 0.5L) < 1e-18L);

    CHECK_THROWS_AS(matching_params(reference(), 2, 3, 3), ConstraintViolation);
}

TEST_CASE("property: delta identities and matching roundtrip over random systems") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> knob(0.2, 3.0);
    int matched = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const SystemParams p = bykov::testing::random_params(rng);
        const DerivedConstants d = derive_constants(p);
        CHECK(d.delta > 1);
        CHECK(std::fabs(d.delta - d.delta1 * d.delta2) <= 1e-12L * d.delta);

        try {
            const SystemParams q = matching_params(p, knob(rng), knob(rng), knob(rng) * 0.1);
            CHECK(max_relative_deviation(invariant_tuple(q), invariant_tuple(p)) < 1e-12L);
            ++matched;
        } catch (const ConstraintViolation&) {
            // omega1_bar <= 0 for this draw
        }
    }
    CHECK(matched > 100);
}

TEST_CASE("property: scaling all rates by s transforms the tuple exactly") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> scale(0.1, 10);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p = bykov::testing::random_params(rng);
        const Real s = scale(rng);
        SystemParams q = p;
        q.C1 *= s, q.E1 *= s, q.omega1 *= s, q.C2 *= s, q.E2 *= s, q.omega2 *= s;
        const InvariantTuple a = invariant_tuple(p), b = invariant_tuple(q);
        CHECK(std::fabs(b.gamma1 - a.gamma1) <= 1e-15L * a.gamma1);
        CHECK(std::fabs(b.gamma2 - a.gamma2) <= 1e-15L * a.gamma2);
        CHECK(std::fabs(b.omega_combo - s * a.omega_combo) <= 1e-15L * b.omega_combo);
        CHECK(std::fabs(b.tau_log_a - a.tau_log_a / s) <= 1e-15L * std::fabs(b.tau_log_a));
    }
}
