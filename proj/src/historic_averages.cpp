#include "bykov/historic_averages.hpp"

#include "bykov/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace bykov {

namespace {

constexpr int kGaussPoints = 10;

struct GaussRule {
    std::array<Real, kGaussPoints> nodes{};
    std::array<Real, kGaussPoints> weights{};
};

// Legendre roots by Newton from the Chebyshev guesses.
GaussRule make_gauss_rule() {
    GaussRule r;
    const int n = kGaussPoints;
    for (int i = 0; i < n; ++i) {
        Real x = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
        Real dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const Real dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 4 * kEpsilon) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2 / ((1 - x * x) * dp * dp);
    }
    return r;
}

const GaussRule& gauss_rule() {
    static const GaussRule rule = make_gauss_rule();
    return rule;
}

template <class F>
Real gauss_panel(F&& f, Real lo, Real hi) {
    const GaussRule& r = gauss_rule();
    const Real mid = (lo + hi) / 2, half = (hi - lo) / 2;
    Real s = 0;
    for (int i = 0; i < kGaussPoints; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

// integral_0^L exp(-lambda s) ds, panels of width 1/(2 lambda) until the integrand
// is below e^-60, then one panel for whatever is left.
Real decaying_integral(Real lambda, Real length) {
    if (length <= 0) return 0;
    auto f = [lambda](Real s) { return std::exp(-lambda * s); };
    const Real width = Real(0.5) / lambda;
    const Real resolved = std::min(length, Real(60) / lambda);
    CompensatedSum sum;
    Real lo = 0;
    while (lo < resolved) {
        const Real hi = std::min(lo + width, resolved);
        sum.add(gauss_panel(f, lo, hi));
        lo = hi;
    }
    if (resolved < length) sum.add(gauss_panel(f, resolved, length));
    return sum.value();
}

} // namespace

void validate_observable(const Observable& g) {
    if (!std::isfinite(g.g_sigma1) || !std::isfinite(g.g_sigma2))
        throw ConstraintViolation("observable values must be finite");
    if (g.kind == ObservableKind::Smooth) {
        if (!(g.exponent > 0) || !std::isfinite(g.exponent))
            throw ConstraintViolation("observable exponent m > 0 violated");
        const Real b = g.boundary_value();
        if (!(b >= std::min(g.g_sigma1, g.g_sigma2) && b <= std::max(g.g_sigma1, g.g_sigma2)))
            throw ConstraintViolation("observable boundary value in [min(g1,g2), max(g1,g2)] violated");
    }
}

PredictedLimits predicted_limits(const DerivedConstants& d, const Observable& g) {
    return {(g.g_sigma1 + d.gamma1 * g.g_sigma2) / (1 + d.gamma1),
            (d.gamma2 * g.g_sigma1 + g.g_sigma2) / (1 + d.gamma2)};
}

Real leg_integral(Real alpha, Real beta, Real ell, Real m) {
    if (!(ell < 0)) return 0;
    const Real kink = -ell / (alpha + beta);
    const Real exit = -ell / beta;
    return decaying_integral(m * alpha, kink) + decaying_integral(m * beta, exit - kink);
}

AverageSeries birkhoff_average(const HittingSequence& h, const SystemParams& p, const Observable& g,
                               std::size_t upto_index) {
    validate_observable(g);
    if (upto_index == 0 || upto_index > h.last_index())
        throw InsufficientData("birkhoff_average: index must be in [1, last hitting index]");

    const PredictedLimits limits = predicted_limits(derive_constants(p), g);
    AverageSeries s;
    s.predicted_even = limits.even;
    s.predicted_odd = limits.odd;

    const bool smooth = g.kind == ObservableKind::Smooth;
    const Real boundary = g.boundary_value();
    CompensatedSum clock, integral;
    for (std::size_t k = 1; k <= upto_index; ++k) {
        const bool in_v1 = k % 2 == 1;
        const Real leg = in_v1 ? h.sojourns_v1[k / 2] : h.sojourns_v2[k / 2 - 1];
        const Real base = in_v1 ? g.g_sigma1 : g.g_sigma2;
        clock.add(leg);
        integral.add(base * leg);
        if (smooth && boundary != base) {
            // entry log-coordinate recovered from the sojourn: ln z_in = -E1 t in V1, ln rho_in = -E2 t in V2
            const Real I = in_v1 ? leg_integral(p.C1, p.E1, -p.E1 * leg, g.exponent)
                                 : leg_integral(p.C2, p.E2, -p.E2 * leg, g.exponent);
            integral.add((boundary - base) * I);
        }
        const Real t = clock.value();
        const Real avg = integral.value() / t;
        if (in_v1) {
            s.odd_averages.push_back(avg);
            s.odd_times.push_back(t);
        } else {
            s.even_averages.push_back(avg);
            s.even_times.push_back(t);
        }
    }
    return s;
}

AverageSeries birkhoff_average(const SectionPoint& q0, const SystemParams& p, const Observable& g,
                               std::size_t upto_index) {
    const std::size_t pairs = std::max<std::size_t>(1, upto_index / 2);
    return birkhoff_average(generate_hitting_sequence(q0, p, pairs), p, g, upto_index);
}

HistoricCertificate historic_certificate(const AverageSeries& s, Real tol) {
    if (s.even_averages.size() < 4 || s.odd_averages.size() < 4)
        throw InsufficientData("historic_certificate: needs at least 4 averages of each parity");
    HistoricCertificate c;
    c.gap = s.predicted_odd - s.predicted_even;
    c.tail_even = s.even_averages.back();
    c.tail_odd = s.odd_averages.back();
    c.historic = std::fabs(c.tail_even - c.tail_odd) > tol &&
                 std::fabs(c.tail_even - s.predicted_even) <= tol &&
                 std::fabs(c.tail_odd - s.predicted_odd) <= tol;
    return c;
}

} // namespace bykov
