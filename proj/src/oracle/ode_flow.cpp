#include "bykov/oracle/ode_flow.hpp"

#include "bykov/errors.hpp"

#include <array>
#include <cmath>

namespace bykov::oracle {

namespace {

using State = std::array<Real, 3>; // rho, theta, z

struct Field {
    Real rho_rate, omega, z_rate;
    State operator()(const State& s) const { return {rho_rate * s[0], omega, z_rate * s[2]}; }
};

State rk4(const Field& f, const State& s, Real h) {
    auto axpy = [](const State& x, Real a, const State& k) {
        return State{x[0] + a * k[0], x[1] + a * k[1], x[2] + a * k[2]};
    };
    const State k1 = f(s);
    const State k2 = f(axpy(s, h / 2, k1));
    const State k3 = f(axpy(s, h / 2, k2));
    const State k4 = f(axpy(s, h, k3));
    State out;
    for (int i = 0; i < 3; ++i) out[i] = s[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

struct Crossing {
    State state;
    Real elapsed;
    std::size_t steps;
};

// Steps until component `watch` reaches 1, then bisects the final step.
Crossing run_to_section(const Field& f, State s, int watch, Real h) {
    Real t = 0;
    std::size_t steps = 0;
    for (;;) {
        const State next = rk4(f, s, h);
        ++steps;
        if (next[watch] >= 1) {
            Real lo = 0, hi = h;
            for (int it = 0; it < 80 && hi - lo > 0; ++it) {
                const Real mid = (lo + hi) / 2;
                if (rk4(f, s, mid)[watch] >= 1) hi = mid; else lo = mid;
            }
            return {rk4(f, s, hi), t + hi, steps};
        }
        s = next;
        t += h;
        if (!std::isfinite(t) || steps > 500'000'000)
            throw NonConvergent("integrate_orbit: section never reached");
    }
}

} // namespace

OdeOrbit integrate_orbit(const SystemParams& p, Real theta0, Real z0, std::size_t hits, Real step) {
    validate_params(p);
    if (!(z0 > 0 && z0 < 1)) throw DegenerateInput("integrate_orbit: z0 must be in (0, 1)");
    if (!(step > 0)) throw ConstraintViolation("step > 0 violated");

    const Field v1{-p.C1, p.omega1, p.E1};
    const Field v2{p.E2, p.omega2, -p.C2};

    OdeOrbit orbit;
    orbit.times.push_back(0);
    orbit.heights.push_back(z0);
    orbit.angles.push_back(reduce_angle(theta0));

    Real theta = theta0, height = z0, t = 0;
    for (std::size_t k = 1; k <= hits; ++k) {
        Crossing c;
        if (k % 2 == 1) {
            // Out2 -> In1 transition, then through V1 to Out1
            const State entry{1, reduce_angle(theta) / p.a, p.a * height};
            c = run_to_section(v1, entry, 2, step);
            height = c.state[0];
        } else {
            const State entry{height, theta, 1};
            c = run_to_section(v2, entry, 0, step);
            height = c.state[2];
        }
        theta = c.state[1];
        t += c.elapsed;
        orbit.steps += c.steps;
        orbit.times.push_back(t);
        orbit.heights.push_back(height);
        orbit.angles.push_back(reduce_angle(theta));
    }
    return orbit;
}

} // namespace bykov::oracle
