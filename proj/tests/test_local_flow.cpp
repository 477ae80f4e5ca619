#include "bykov/errors.hpp"
#include "bykov/local_flow.hpp"
#include "reference.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace bykov;
using bykov::testing::reference;

namespace {
bool near(Real x, Real y, Real tol) { return std::fabs(x - y) <= tol; }
} // namespace

TEST_CASE("phi1 on the reference system") {
    const SystemParams p = reference();
    const Transit out = phi1(SectionPoint::make(Chart::In1, 1, std::log(0.05L)), p);
    CHECK(out.point.chart == Chart::Out1);
    CHECK(near(out.time, -std::log(0.05L), 1e-18L));
    CHECK(static_cast<double>(out.time) == doctest::Approx(2.995732).epsilon(1e-7));
    CHECK(near(out.point.log_coord, 2 * std::log(0.05L), 1e-17L));
    CHECK(near(out.point.theta_lifted, 1 + out.time, 1e-17L));

    const Transit unit = phi1(SectionPoint::make(Chart::In1, 0, -1), p);
    CHECK(unit.time == 1);
}

TEST_CASE("phi2 on the reference system") {
    const SystemParams p = reference();
    const Real theta_in = 1 + -std::log(0.05L);
    const Transit out = phi2(SectionPoint::make(Chart::In2, theta_in, std::log(0.0025L)), p);
    CHECK(out.point.chart == Chart::Out2);
    CHECK(static_cast<double>(out.time) == doctest::Approx(3.994310).epsilon(1e-7));
    CHECK(near(out.point.log_coord, 2 * std::log(0.0025L), 1e-17L));
    CHECK(near(std::exp(out.point.log_coord), 6.25e-6L, 1e-20L));
    CHECK(static_cast<double>(out.point.theta_lifted) == doctest::Approx(11.984352).epsilon(1e-7));

    CHECK(near(phi2(SectionPoint::make(Chart::In2, 5, -1.5L), p).time, 1, 1e-18L));
}

TEST_CASE("local maps reject boundary, invariant-manifold and wrong-chart points") {
    const SystemParams p = reference();
    CHECK_THROWS_AS(phi1(SectionPoint::make(Chart::In1, 0, 0), p), DegenerateInput);
    CHECK_THROWS_AS(phi1(SectionPoint::make(Chart::In1, 0, -std::numeric_limits<Real>::infinity()), p),
                    DegenerateInput);
    CHECK_THROWS_AS(phi1(SectionPoint::make(Chart::In1, 0, std::nanl("")), p), DegenerateInput);
    CHECK_THROWS_AS(phi2(SectionPoint::make(Chart::In1, 0, -1), p), DegenerateInput);
    CHECK_THROWS_AS(psi21(SectionPoint::make(Chart::Out1, 0, -1), p), DegenerateInput);
    CHECK_THROWS_AS(psi12(SectionPoint::make(Chart::Out2, 0, -1)), DegenerateInput);
}

TEST_CASE("psi21 and psi12") {
    const SystemParams p = reference();
    const SectionPoint q = psi21(SectionPoint::make(Chart::Out2, 1, std::log(0.1L)), p);
    CHECK(q.chart == Chart::In1);
    CHECK(q.theta_lifted == 2);
    CHECK(near(q.log_coord, std::log(0.05L), 1e-18L));
    CHECK(psi21(SectionPoint::make(Chart::Out2, 0, -3), p).theta_lifted == 0);
    CHECK(near(std::exp(psi21(SectionPoint::make(Chart::Out2, 0, std::log(0.5L)), p).log_coord), 0.25L, 1e-18L));

    const SectionPoint r = psi12(SectionPoint::make(Chart::Out1, 7.5L, -4));
    CHECK(r.chart == Chart::In2);
    CHECK(r.theta_lifted == 7.5L);
    CHECK(r.log_coord == -4);
}

TEST_CASE("poincare map matches the first-return formula") {
    const SystemParams p = reference();
    const DerivedConstants d = derive_constants(p);
    const SectionPoint q = SectionPoint::make(Chart::In1, 1, std::log(0.1L));
    const Transit r = poincare(q, p);
    CHECK(near(r.point.log_coord, std::log(5e-5L), 1e-16L));
    // (-K ln z + theta) mod 2 pi = 3.1596267004652476978, divided by a, reduced
    CHECK(near(r.point.theta_lifted, 6.3192534009304953956L, 1e-16L));
    CHECK(near(r.point.theta, 0.036068093750908918689L, 1e-16L));
    CHECK(near(r.point.theta, reduce_angle(reduce_angle(-d.K * q.log_coord + q.theta) / p.a), 1e-16L));

    const Transit twice = poincare(r.point, p);
    CHECK(near(twice.point.log_coord, d.log_a + 4 * (d.log_a + 4 * std::log(0.1L)), 1e-15L));
}

TEST_CASE("resonant height lands on angle zero") {
    const SystemParams p = reference();
    const DerivedConstants d = derive_constants(p);
    // -K ln z + theta = 2 pi with theta = 0
    const Real log_z = -kTwoPi / d.K;
    const Transit r = poincare(SectionPoint::make(Chart::In1, 0, log_z), p);
    const Real dist = std::min(r.point.theta, kTwoPi - r.point.theta);
    CHECK(dist < 1e-15L);
}

TEST_CASE("poincare equals the stepwise composition") {
    const SystemParams p = bykov::testing::perturbed();
    SectionPoint q = SectionPoint::make(Chart::In1, 0.3L, std::log(0.07L));
    for (int k = 0; k < 5; ++k) {
        const Transit a = phi1(q, p);
        const Transit b = phi2(psi12(a.point), p);
        const SectionPoint manual = psi21(b.point, p);
        const Transit r = poincare(q, p);
        CHECK(r.point.log_coord == manual.log_coord);
        CHECK(r.point.theta == manual.theta);
        CHECK(r.time == a.time + b.time);
        q = r.point;
    }
}

TEST_CASE("30 idealized returns stay finite and follow the log recursion") {
    const SystemParams p = reference();
    const DerivedConstants d = derive_constants(p);
    SectionPoint q = SectionPoint::make(Chart::In1, 2, std::log(0.05L));
    for (int k = 0; k < 30; ++k) {
        const Transit r = poincare(q, p);
        const Real expect = d.log_a + d.delta * q.log_coord;
        REQUIRE(std::isfinite(r.point.log_coord));
        REQUIRE(std::isfinite(r.time));
        CHECK(std::fabs(r.point.log_coord - expect) <= 1e-12L * std::max<Real>(1, std::fabs(expect)));
        CHECK(r.point.theta >= 0);
        CHECK(r.point.theta < kTwoPi);
        q = r.point;
    }
}

TEST_CASE("perturbed phi1 respects the higher-order bound") {
    const SystemParams p = bykov::testing::perturbed(0.1L, 0.5L);
    const Real c1 = 0.1L, eps = 0.5L, delta1 = 2;
    for (Real z : {0.1L, 0.05L, 0.01L, 1e-4L, 1e-8L}) {
        for (Real theta : {0.0L, 1.0L, 2.5L, 3.14159L, 5.0L}) {
            const Transit out = phi1(SectionPoint::make(Chart::In1, theta, std::log(z)), p);
            const Real u = c1 * std::pow(z, delta1 * eps);
            const Real bound = std::log1p(u / (1 - u));
            CHECK(std::fabs(out.point.log_coord - delta1 * std::log(z)) <= bound * (1 + 1e-15L));
        }
    }
    // the plain ln(1 + c1 z^{delta1 eps}) bound at z = 0.05, theta = 1
    const Transit out = phi1(SectionPoint::make(Chart::In1, 1, std::log(0.05L)), p);
    CHECK(std::fabs(out.point.log_coord - 2 * std::log(0.05L)) <= std::log1p(0.1L * 0.05L));
}

TEST_CASE("perturbation that cancels the leading term is rejected") {
    SystemParams p = reference();
    p.perturbation = PerturbationSpec{2, 0, 0.5L};
    // c1 z^{delta1 eps} cos(pi) = -2 * 0.5 = -1
    CHECK_THROWS_AS(phi1(SectionPoint::make(Chart::In1, kPi, std::log(0.5L)), p), DegenerateInput);
}

TEST_CASE("transit times decrease in the height and diverge at the manifold") {
    const SystemParams p = reference();
    Real previous = 0;
    for (Real lz = -1e-3L; lz > -1e6L; lz *= 3) {
        const Real t = phi1(SectionPoint::make(Chart::In1, 0, lz), p).time;
        CHECK(t > previous);
        previous = t;
    }
    CHECK(previous > 1e5L);
}

TEST_CASE("flow_at inside the cylinders") {
    const SystemParams p = reference();
    const FlowState s{Cylinder::V1, 0, std::log(0.05L), 2};
    const FlowState same = flow_at(0, s, p);
    CHECK(same.rho_log == s.rho_log);
    CHECK(same.z_log == s.z_log);
    CHECK(same.theta_lifted == s.theta_lifted);

    const Real exit = time_to_exit(s, p);
    CHECK(static_cast<double>(exit) == doctest::Approx(2.995732).epsilon(1e-7));
    CHECK(std::fabs(flow_at(exit, s, p).z_log) < 1e-18L);
    CHECK(std::fabs(flow_at(exit, s, p).rho_log - 2 * std::log(0.05L)) < 1e-17L);
    CHECK_THROWS_AS(flow_at(exit * 1.001L, s, p), OutOfSojourn);
    CHECK_THROWS_AS(flow_at(-0.1L, s, p), OutOfSojourn);

    const FlowState v2{Cylinder::V2, -3, 0, 0};
    CHECK(flow_at(1, v2, p).theta_lifted == 2);
    CHECK(flow_at(1, v2, p).z_log == -3);
}
