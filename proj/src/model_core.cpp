#include "bykov/model_core.hpp"

#include "bykov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bykov {

namespace {

void require(bool ok, const char* inequality) {
    if (!ok) throw ConstraintViolation(std::string(inequality) + " violated");
}

bool finite(Real x) { return std::isfinite(x); }

} // namespace

SystemParams validate_params(SystemParams p) {
    require(finite(p.C1) && finite(p.E1) && finite(p.omega1) && finite(p.C2) && finite(p.E2) &&
                finite(p.omega2) && finite(p.a),
            "all parameters finite");
    require(p.omega1 > 0, "omega1 > 0");
    require(p.omega2 > 0, "omega2 > 0");
    require(p.E1 > 0, "E1 > 0");
    require(p.C1 > p.E1, "C1 > E1");
    require(p.E2 > 0, "E2 > 0");
    require(p.C2 > p.E2, "C2 > E2");
    require(p.a > 0 && p.a < 1, "a in (0,1)");
    if (p.perturbation) {
        const auto& s = *p.perturbation;
        require(finite(s.c1) && s.c1 >= 0, "c1 >= 0");
        require(finite(s.c2) && s.c2 >= 0, "c2 >= 0");
        require(s.eps > 0 && s.eps < 1, "eps in (0,1)");
    }
    return p;
}

DerivedConstants derive_constants(const SystemParams& p) {
    DerivedConstants d;
    d.gamma1 = p.C1 / p.E2;
    d.gamma2 = p.C2 / p.E1;
    d.delta1 = p.C1 / p.E1;
    d.delta2 = p.C2 / p.E2;
    d.delta = d.gamma1 * d.gamma2;
    d.K = (p.omega1 + d.gamma1 * p.omega2) / p.E1;
    d.tau = (1 + d.gamma1) / p.E1;
    d.log_a = std::log(p.a);
    return d;
}

InvariantTuple invariant_tuple(const SystemParams& p) {
    const auto d = derive_constants(p);
    return {d.gamma1, d.gamma2, p.omega1 + d.gamma1 * p.omega2, d.tau * d.log_a};
}

Real max_relative_deviation(const InvariantTuple& x, const InvariantTuple& y) {
    auto rel = [](Real u, Real v) {
        const Real scale = std::max(std::fabs(u), std::fabs(v));
        return scale == 0 ? Real(0) : std::fabs(u - v) / scale;
    };
    return std::max({rel(x.gamma1, y.gamma1), rel(x.gamma2, y.gamma2),
                     rel(x.omega_combo, y.omega_combo), rel(x.tau_log_a, y.tau_log_a)});
}

SystemParams matching_params(const SystemParams& p, Real E1_bar, Real E2_bar, Real omega2_bar) {
    validate_params(p);
    require(E1_bar > 0, "E1_bar > 0");
    require(E2_bar > 0, "E2_bar > 0");
    require(omega2_bar > 0, "omega2_bar > 0");

    const auto inv = invariant_tuple(p);
    SystemParams q;
    q.E1 = E1_bar;
    q.E2 = E2_bar;
    q.omega2 = omega2_bar;
    q.C1 = inv.gamma1 * E2_bar;
    q.C2 = inv.gamma2 * E1_bar;
    q.omega1 = inv.omega_combo - inv.gamma1 * omega2_bar;
    const Real tau_bar = (1 + inv.gamma1) / E1_bar;
    q.a = std::exp(inv.tau_log_a / tau_bar);
    q.perturbation = p.perturbation;
    return validate_params(q);
}

} // namespace bykov
