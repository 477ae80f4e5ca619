#include "bykov/adjusted_times.hpp"

#include "bykov/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bykov {

namespace {

Real pull_back(Real x, std::size_t steps, const DerivedConstants& d) {
    const Real c = d.tau * d.log_a;
    for (std::size_t s = 0; s < steps; ++s) x = (x + c) / d.delta;
    return x;
}

// R_i = T_i - delta T_{i-1} + tau ln a, i = 1..pairs-1 (entry 0 unused)
std::vector<Real> residuals(const std::vector<Real>& T, const DerivedConstants& d) {
    std::vector<Real> R(T.size(), 0);
    for (std::size_t i = 1; i < T.size(); ++i) R[i] = T[i] - d.delta * T[i - 1] + d.tau * d.log_a;
    return R;
}

std::vector<Real> interleave(const std::vector<Real>& even, const std::vector<Real>& odd) {
    std::vector<Real> out;
    out.reserve(even.size() + odd.size());
    for (std::size_t i = 0; i < even.size(); ++i) {
        out.push_back(even[i]);
        if (i < odd.size()) out.push_back(odd[i]);
    }
    return out;
}

} // namespace

std::vector<Real> AdjustedTimes::zero_anchored() const { return interleave(t_even_zero, t_odd_zero); }
std::vector<Real> AdjustedTimes::offset_anchored() const { return interleave(t_even, t_odd); }

std::vector<Real> pair_durations(const HittingSequence& h) {
    std::vector<Real> T;
    for (std::size_t i = 0; 2 * i + 2 < h.times.size(); ++i) T.push_back(h.times[2 * i + 2] - h.times[2 * i]);
    return T;
}

std::vector<Real> backward_T0_family(const HittingSequence& h, const DerivedConstants& d) {
    const std::vector<Real> T = pair_durations(h);
    if (T.size() < 2) throw InsufficientData("backward_T0_family: needs at least 2 pairs");
    std::vector<Real> family;
    family.reserve(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) family.push_back(pull_back(T[i], i, d));
    return family;
}

AdjustedTimes adjusted_sequence(const HittingSequence& h, const DerivedConstants& d, std::size_t n) {
    AdjustedTimes a;
    a.T = pair_durations(h);
    if (n < 1 || n > a.T.size())
        throw InsufficientData("adjusted_sequence: n must be in [1, number of pairs]");
    a.T0_family = backward_T0_family(h, d);
    a.T0 = a.T0_family.back();

    const std::size_t L = a.T.size() - 1;
    const std::vector<Real> R = residuals(a.T, d);
    const Real last_residual = std::max(std::fabs(R[L]), std::fabs(R[L - 1]));
    a.residual_tail_bound = last_residual / (std::pow(d.delta, static_cast<Real>(L)) * (d.delta - 1));

    const Real c = d.tau * d.log_a;
    a.T_seq.push_back(a.T0);
    for (std::size_t i = 1; i < n; ++i) a.T_seq.push_back(d.delta * a.T_seq.back() - c);

    // offset uses every measured pair, extending T~ past n when needed
    CompensatedSum offset;
    Real Tt = a.T0;
    for (std::size_t k = 0; k < a.T.size(); ++k) {
        if (k > 0) Tt = d.delta * Tt - c;
        offset.add(a.T[k] - Tt);
    }
    a.offset = offset.value();

    CompensatedSum clock;
    a.t_even_zero.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
        clock.add(a.T_seq[i]);
        a.t_even_zero.push_back(clock.value());
    }
    for (std::size_t i = 0; i < n; ++i)
        a.t_odd_zero.push_back((a.t_even_zero[i + 1] + d.gamma1 * a.t_even_zero[i]) / (1 + d.gamma1));
    for (Real t : a.t_even_zero) a.t_even.push_back(t + a.offset);
    for (Real t : a.t_odd_zero) a.t_odd.push_back(t + a.offset);
    return a;
}

AdjustedTimes adjusted_sequence(const HittingSequence& h, const DerivedConstants& d) {
    return adjusted_sequence(h, d, h.pairs());
}

ShiftCheck shift_invariance_check(const HittingSequence& h, const DerivedConstants& d, std::size_t N) {
    const std::vector<Real> T = pair_durations(h);
    if (T.size() < 3 || N >= T.size() - 2)
        throw InsufficientData("shift_invariance_check: N < pairs - 2 violated");
    const std::vector<Real> family = backward_T0_family(h, d);
    const Real c = d.tau * d.log_a;

    ShiftCheck s;
    s.T0_shifted = pull_back(T.back(), T.size() - 1 - N, d);
    Real forward = family.back();
    for (std::size_t j = 0; j < N; ++j) forward = d.delta * forward - c;
    s.T_N_forward = forward;
    s.max_dev = std::fabs(s.T0_shifted - s.T_N_forward);
    for (std::size_t i = N; i < T.size(); ++i)
        s.max_dev = std::max(s.max_dev, std::fabs(pull_back(T[i], i - N, d) - s.T0_shifted));

    const std::vector<Real> R = residuals(T, d);
    Real scale = 1;
    for (std::size_t j = 1; j + N < T.size(); ++j) {
        scale /= d.delta;
        s.bound += std::fabs(R[j + N]) * scale;
    }
    s.bound += 64 * kEpsilon * std::fabs(s.T_N_forward);
    return s;
}

} // namespace bykov
