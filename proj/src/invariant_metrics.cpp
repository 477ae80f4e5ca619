#include "bykov/invariant_metrics.hpp"

#include "bykov/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace bykov {

namespace {

void require_pairs(const HittingSequence& h, std::size_t needed, const char* op) {
    if (h.pairs() < needed || h.times.size() < 2 * needed + 1)
        throw InsufficientData(std::string(op) + ": needs at least " + std::to_string(needed) +
                               " pairs of hitting times");
}

// Sojourns read back from the time list, so the diagnostics work on any series.
Real dt(const HittingSequence& h, std::size_t k) { return h.times[k] - h.times[k - 1]; }
Real pair_duration(const HittingSequence& h, std::size_t i) {
    return h.times[2 * i + 2] - h.times[2 * i];
}

} // namespace

DiagnosticSeries lemma_diagnostics(const HittingSequence& h, const DerivedConstants& d) {
    require_pairs(h, 3, "lemma_diagnostics");
    const std::size_t n = h.pairs();
    const bool has_last_odd = h.times.size() >= 2 * n + 2;
    const Real tau_log_a = d.tau * d.log_a;

    DiagnosticSeries s;
    s.lemma1.first = 1;
    const std::size_t lemma1_end = has_last_odd ? n + 1 : n;
    for (std::size_t i = 1; i < lemma1_end; ++i)
        s.lemma1.values.push_back(dt(h, 2 * i + 1) - d.gamma2 * dt(h, 2 * i));

    s.lemma2.first = 0;
    for (std::size_t i = 0; i < n; ++i)
        s.lemma2.values.push_back(dt(h, 2 * i + 2) - d.gamma1 * dt(h, 2 * i + 1));

    s.lemma3.first = 1;
    s.residuals.first = 1;
    for (std::size_t i = 1; i < n; ++i) {
        const Real l3 = pair_duration(h, i) - d.delta * pair_duration(h, i - 1);
        s.lemma3.values.push_back(l3);
        s.residuals.values.push_back(l3 + tau_log_a);
    }
    return s;
}

DiagnosticSeries corollary_ratios(const HittingSequence& h, const SystemParams& p) {
    require_pairs(h, 2, "corollary_ratios");
    const std::size_t n = h.pairs();
    const bool has_last_odd = h.times.size() >= 2 * n + 2;

    DiagnosticSeries s;
    s.ratio1.first = 0;
    s.ratio4.first = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Real in_v1 = dt(h, 2 * i + 1);
        const Real in_v2 = dt(h, 2 * i + 2);
        s.ratio1.values.push_back(in_v2 / in_v1);
        s.ratio4.values.push_back((p.omega1 * in_v1 + p.omega2 * in_v2) / pair_duration(h, i));
    }
    s.ratio2.first = 1;
    const std::size_t ratio2_end = has_last_odd ? n + 1 : n;
    for (std::size_t i = 1; i < ratio2_end; ++i)
        s.ratio2.values.push_back(dt(h, 2 * i + 1) / dt(h, 2 * i));
    s.ratio3.first = 1;
    for (std::size_t i = 1; i < n; ++i)
        s.ratio3.values.push_back(pair_duration(h, i) / pair_duration(h, i - 1));
    return s;
}

DiagnosticSeries full_diagnostics(const HittingSequence& h, const SystemParams& p) {
    DiagnosticSeries s = lemma_diagnostics(h, derive_constants(p));
    const DiagnosticSeries r = corollary_ratios(h, p);
    s.ratio1 = r.ratio1;
    s.ratio2 = r.ratio2;
    s.ratio3 = r.ratio3;
    s.ratio4 = r.ratio4;
    return s;
}

Real root_test_statistic(const IndexedSeries& residuals, std::size_t from) {
    Real sup = 0;
    for (std::size_t i = std::max(from, std::max<std::size_t>(residuals.first, 1)); i < residuals.end(); ++i) {
        const Real r = std::fabs(residuals[i]);
        if (r == 0) continue;
        sup = std::max(sup, std::pow(static_cast<Real>(i) * r, Real(1) / static_cast<Real>(i)));
    }
    return sup;
}

Real weighted_residual_tail(const IndexedSeries& residuals, std::size_t from) {
    CompensatedSum sum;
    for (std::size_t i = std::max(from + 1, residuals.first); i < residuals.end(); ++i)
        sum.add(static_cast<Real>(i) * std::fabs(residuals[i]));
    return sum.value();
}

InvariantTuple estimate_invariants(const HittingSequence& h) {
    require_pairs(h, 5, "estimate_invariants");
    if (h.spins_v1.size() < h.pairs() || h.spins_v2.size() < h.pairs())
        throw InsufficientData("estimate_invariants: angle data missing from the hitting sequence");
    const std::size_t n = h.pairs();

    std::vector<InvariantTuple> per_index;
    for (std::size_t k = 2; k < n; ++k) {
        const Real T0 = pair_duration(h, k - 2);
        const Real T1 = pair_duration(h, k - 1);
        const Real T2 = pair_duration(h, k);
        const Real delta = (T2 - T1) / (T1 - T0);
        InvariantTuple e;
        e.gamma1 = dt(h, 2 * k + 2) / dt(h, 2 * k + 1);
        e.gamma2 = delta / e.gamma1;
        e.tau_log_a = -(T2 - delta * T1);
        e.omega_combo = (1 + e.gamma1) * (h.spins_v1[k] + h.spins_v2[k]) / T2;
        per_index.push_back(e);
    }

    const std::size_t tail = std::min<std::size_t>(3, per_index.size());
    auto check = [&](const char* name, auto field) {
        Real mean = 0;
        for (std::size_t j = per_index.size() - tail; j < per_index.size(); ++j) mean += field(per_index[j]);
        mean /= static_cast<Real>(tail);
        Real var = 0;
        for (std::size_t j = per_index.size() - tail; j < per_index.size(); ++j) {
            const Real dev = field(per_index[j]) - mean;
            var += dev * dev;
        }
        const Real sd = std::sqrt(var / static_cast<Real>(tail));
        if (sd > 1e-3L * std::fabs(mean))
            throw NonConvergent(std::string("estimate_invariants: ") + name + " estimates do not settle");
    };
    check("gamma1", [](const InvariantTuple& e) { return e.gamma1; });
    check("gamma2", [](const InvariantTuple& e) { return e.gamma2; });
    check("omega1 + gamma1 omega2", [](const InvariantTuple& e) { return e.omega_combo; });
    check("tau ln a", [](const InvariantTuple& e) { return e.tau_log_a; });
    return per_index.back();
}

} // namespace bykov
