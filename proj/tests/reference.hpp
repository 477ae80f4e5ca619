#pragma once

#include "bykov/local_flow.hpp"
#include "bykov/model_core.hpp"

#include <cmath>
#include <random>

namespace bykov::testing {

// Reference system (C1, E1, omega1, C2, E2, omega2, a) = (2, 1, 1, 3, 1.5, 2, 0.5),
// seeded at theta0 = 1, z0 = 0.1. Frozen values below were evaluated with 40-digit
// arithmetic from the closed forms t_1 = -ln(a z0)/E1, t_2 = t_1 - delta1 ln(a z0)/E2, ...
inline SystemParams reference() { return {2, 1, 1, 3, 1.5L, 2, 0.5L, std::nullopt}; }

inline SystemParams perturbed(Real c = 0.1L, Real eps = 0.5L) {
    SystemParams p = reference();
    p.perturbation = PerturbationSpec{c, c, eps};
    return p;
}

/// Same invariant tuple as reference().
inline SystemParams matched() { return {4, 2, 7.0L / 3, 6, 3, 1, 0.25L, std::nullopt}; }

inline SectionPoint seed(Real theta0 = 1, Real z0 = 0.1L) {
    return SectionPoint::make(Chart::Out2, theta0, std::log(z0));
}

inline constexpr Real kTimes[] = {
    0,
    2.995732273553990993435224L,
    6.990041971625978984682188L,
    19.66611824640188826784031L,
    36.56755327943643397871782L,
    87.96500555910001642076755L,
    156.4949419319847930101672L,
    362.7778982311990680877834L,
    637.8218399634847681912716L,
    1463.646812340901813811154L,
    2564.746775510791207970996L,
};

inline constexpr Real kTauLogA = -1.617343421306539055306875L;
inline constexpr Real kMinusLogAOverE1 = 0.6931471805599453094172321L;

/// A random valid system; eigenvalue ratios in (1.05, 4), rates in (0.2, 3).
inline SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> rate(0.2, 3.0), ratio(1.05, 4.0), freq(0.1, 5.0), coef(0.05, 0.95);
    SystemParams p;
    p.E1 = rate(rng);
    p.C1 = p.E1 * ratio(rng);
    p.E2 = rate(rng);
    p.C2 = p.E2 * ratio(rng);
    p.omega1 = freq(rng);
    p.omega2 = freq(rng);
    p.a = coef(rng);
    return p;
}

} // namespace bykov::testing
