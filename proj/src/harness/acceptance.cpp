#include "bykov/harness/acceptance.hpp"

#include "bykov/adjusted_times.hpp"
#include "bykov/conjugacy.hpp"
#include "bykov/errors.hpp"
#include "bykov/historic_averages.hpp"
#include "bykov/hitting_times.hpp"
#include "bykov/invariant_metrics.hpp"
#include "bykov/local_flow.hpp"
#include "bykov/oracle/ode_flow.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <sstream>

namespace bykov::harness {

namespace {

using Clock = std::chrono::steady_clock;

// Reference values evaluated at 40 digits from the closed forms of the reference orbit.
constexpr Real kT1 = 2.995732273553990993435224L;
constexpr Real kT2 = 6.990041971625978984682188L;
constexpr Real kT3 = 19.66611824640188826784031L;
constexpr Real kT4 = 36.56755327943643397871782L;
constexpr Real kTauLogA = -1.617343421306539055306875L;
constexpr Real kLemma1Limit = 0.6931471805599453094172321L;
constexpr Real kOddAverageT3 = 0.20310615689513545141L;
constexpr Real kOddAverageT5 = 0.23754610823127334204L;

constexpr std::size_t kPairs = 12;

SystemParams reference_params() { return {2, 1, 1, 3, 1.5L, 2, 0.5L, std::nullopt}; }

SystemParams perturbed_params() {
    SystemParams p = reference_params();
    p.perturbation = PerturbationSpec{0.1L, 0.1L, 0.5L};
    return p;
}

SystemParams matched_params() { return {4, 2, 7.0L / 3, 6, 3, 1, 0.25L, std::nullopt}; }

SectionPoint reference_seed() { return SectionPoint::make(Chart::Out2, 1, std::log(0.1L)); }

std::string sci(Real x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3Le", x);
    return buf;
}

struct Report {
    bool ok = true;
    std::ostringstream detail;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "FAILED " << what << "; ";
        }
    }
    void note(const std::string& what) { detail << what << "; "; }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void criterion1(Report& r) {
    const auto start = Clock::now();
    const SystemParams p = reference_params();
    const HittingSequence h = generate_hitting_sequence(reference_seed(), p, 2);
    const oracle::OdeOrbit ode = oracle::integrate_orbit(p, 1, 0.1L, 4);
    const double elapsed = seconds_since(start);

    const Real expected[] = {kT1, kT2, kT3, kT4};
    Real closed = 0, vs_ode = 0;
    for (int k = 1; k <= 4; ++k) {
        closed = std::max(closed, std::fabs(h.times[k] - expected[k - 1]));
        vs_ode = std::max(vs_ode, std::fabs(h.times[k] - ode.times[k]));
    }
    r.check(closed < 1e-9L, "t1..t4 within 1e-9 of closed form");
    r.check(vs_ode < 1e-6L, "t1..t4 within 1e-6 of ODE oracle");
    r.check(elapsed < 1.0, "runtime < 1s");
    r.note("max |t - closed form| = " + sci(closed) + ", max |t - ODE| = " + sci(vs_ode) +
           ", runtime " + sci(elapsed) + "s");
}

void criterion2(Report& r) {
    const SystemParams p = reference_params();
    const HittingSequence h = generate_hitting_sequence(reference_seed(), p, kPairs);
    const DiagnosticSeries s = lemma_diagnostics(h, derive_constants(p));
    Real e1 = 0, e2 = 0, e3 = 0;
    for (std::size_t i = 1; i <= 10; ++i) {
        e1 = std::max(e1, std::fabs(s.lemma1[i] - kLemma1Limit));
        e2 = std::max(e2, std::fabs(s.lemma2[i]));
        e3 = std::max(e3, std::fabs(s.lemma3[i] + kTauLogA));
    }
    r.check(e1 < 1e-10L, "lemma1 = -ln(a)/E1 to 1e-10");
    r.check(e2 < 1e-10L, "lemma2 = 0 to 1e-10");
    r.check(e3 < 1e-10L, "lemma3 = -tau ln a to 1e-10");
    r.note("max errors over 1<=i<=10: " + sci(e1) + ", " + sci(e2) + ", " + sci(e3));
}

void criterion3(Report& r) {
    const SystemParams p = perturbed_params();
    const DerivedConstants d = derive_constants(p);
    const HittingSequence h = generate_hitting_sequence(reference_seed(), p, kPairs);
    const DiagnosticSeries s = lemma_diagnostics(h, d);

    Real e1 = 0, e2 = 0, e3 = 0;
    for (std::size_t i = 10; i < s.lemma1.end(); ++i) e1 = std::max(e1, std::fabs(s.lemma1[i] - kLemma1Limit));
    for (std::size_t i = 10; i < s.lemma2.end(); ++i) e2 = std::max(e2, std::fabs(s.lemma2[i]));
    for (std::size_t i = 10; i < s.lemma3.end(); ++i) e3 = std::max(e3, std::fabs(s.lemma3[i] + kTauLogA));
    r.check(e1 < 1e-6L && e2 < 1e-6L && e3 < 1e-6L, "limits within 1e-6 from i=10");
    r.note("errors from i=10: " + sci(e1) + ", " + sci(e2) + ", " + sci(e3));

    // least-squares slope of ln|lemma2[i]| against ln(a z_{2i}), above the rounding floor
    std::vector<Real> xs, ys;
    for (std::size_t i = s.lemma2.first; i < s.lemma2.end(); ++i) {
        const Real v = std::fabs(s.lemma2[i]);
        if (v <= 1e3L * kEpsilon * h.times[2 * i + 2]) continue;
        xs.push_back(d.log_a + h.points[2 * i].log_coord);
        ys.push_back(std::log(v));
    }
    const Real threshold = d.delta1 * p.perturbation->eps - 0.1L;
    if (xs.size() < 2) {
        r.check(false, "at least two lemma2 values above the rounding floor");
    } else {
        Real mx = 0, my = 0;
        for (std::size_t k = 0; k < xs.size(); ++k) mx += xs[k], my += ys[k];
        mx /= xs.size();
        my /= ys.size();
        Real sxy = 0, sxx = 0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            sxy += (xs[k] - mx) * (ys[k] - my);
            sxx += (xs[k] - mx) * (xs[k] - mx);
        }
        const Real slope = sxy / sxx;
        r.check(slope >= threshold, "lemma2 log-log slope >= delta1 eps - 0.1");
        r.note("lemma2 slope " + sci(slope) + " over " + std::to_string(xs.size()) + " points (threshold " +
               sci(threshold) + ")");
    }

    const Real root = root_test_statistic(s.residuals, kPairs / 2);
    r.check(root < 1, "root-test statistic tail < 1");
    r.note("root-test sup_{i>=6} = " + sci(root));
}

void criterion4(Report& r) {
    const SystemParams p = reference_params();
    const DerivedConstants d = derive_constants(p);
    const HittingSequence h = generate_hitting_sequence(reference_seed(), p, kPairs);
    const DiagnosticSeries s = corollary_ratios(h, p);

    auto worst_from = [&](std::size_t i0) {
        Real e = 0;
        for (std::size_t i = i0; i < s.ratio3.end(); ++i) {
            e = std::max(e, std::fabs(s.ratio1[i] - d.gamma1));
            e = std::max(e, std::fabs(s.ratio2[i] - d.gamma2));
            e = std::max(e, std::fabs(s.ratio3[i] - d.delta));
        }
        return e;
    };
    const Real at8 = worst_from(8);
    r.check(at8 < 1e-6L, "ratios within 1e-6 of (gamma1, gamma2, delta) from i=8");
    r.note("at i=8: |ratio1-g1| = " + sci(std::fabs(s.ratio1[8] - d.gamma1)) + ", |ratio2-g2| = " +
           sci(std::fabs(s.ratio2[8] - d.gamma2)) + ", |ratio3-delta| = " + sci(std::fabs(s.ratio3[8] - d.delta)));
    for (std::size_t i = 1; i < s.ratio3.end(); ++i) {
        if (worst_from(i) < 1e-6L) {
            r.note("1e-6 first holds from i=" + std::to_string(i));
            break;
        }
    }

    const Real target = (p.omega1 + d.gamma1 * p.omega2) / (1 + d.gamma1);
    Real e4 = 0;
    for (Real v : s.ratio4.values) e4 = std::max(e4, std::fabs(v - target));
    r.check(e4 < 1e-10L, "ratio4 = 11/7 to 1e-10 at every i");
    r.note("max |ratio4 - 11/7| = " + sci(e4));
}

void criterion5(Report& r) {
    const SystemParams p = reference_params();
    const HittingSequence h = generate_hitting_sequence(reference_seed(), p, kPairs);
    const Observable g{ObservableKind::PiecewiseConstant, 0, 1, 2, std::nullopt};
    const AverageSeries s = birkhoff_average(h, p, g, h.last_index());

    Real even_err = 0;
    for (Real v : s.even_averages) even_err = std::max(even_err, std::fabs(v - 4.0L / 7));
    r.check(even_err < 1e-10L, "even averages = 4/7 to 1e-10");
    r.check(std::fabs(s.odd_averages[1] - kOddAverageT3) < 1e-9L &&
                std::fabs(s.odd_averages[2] - kOddAverageT5) < 1e-9L,
            "odd averages at t3, t5 match closed form");
    Real odd_tail = 0;
    for (std::size_t i = 7; i < s.odd_averages.size(); ++i)
        odd_tail = std::max(odd_tail, std::fabs(s.odd_averages[i] - 0.25L));
    r.check(odd_tail < 1e-3L, "odd averages within 1e-3 of 1/4 from odd entry 7 (t15)");
    std::size_t first_within = s.odd_averages.size();
    for (std::size_t i = s.odd_averages.size(); i-- > 0;) {
        if (std::fabs(s.odd_averages[i] - 0.25L) >= 1e-3L) break;
        first_within = i;
    }
    const HistoricCertificate c = historic_certificate(s, 1e-3L);
    r.check(c.historic, "historic certificate true");
    r.check(std::fabs(c.gap + 9.0L / 28) < 1e-9L, "gap = -9/28 to 1e-9");
    r.note("max even error " + sci(even_err) + ", odd within 1e-3 from t" +
           std::to_string(AverageSeries::odd_hitting_index(first_within)) + ", gap " + sci(c.gap));
}

void criterion6(Report& r) {
    {
        const SystemParams p = reference_params();
        const DerivedConstants d = derive_constants(p);
        const HittingSequence h = generate_hitting_sequence(reference_seed(), p, kPairs);
        const AdjustedTimes a = adjusted_sequence(h, d);
        r.check(std::fabs(a.T0 - kT2) < 1e-9L, "T~0 = 6.990042 (closed form)");
        r.check(a.residual_tail_bound < 1e-12L, "empty residual tail");

        const Real c = d.tau * d.log_a;
        Real rec = 0, pair_id = 0, omega_id = 0;
        for (std::size_t i = 1; i < a.T_seq.size(); ++i)
            rec = std::max(rec, std::fabs(a.T_seq[i] - d.delta * a.T_seq[i - 1] + c) / std::fabs(a.T_seq[i]));
        const std::vector<Real>& te = a.t_even_zero;
        const std::vector<Real>& to = a.t_odd_zero;
        for (std::size_t i = 1; i + 1 < te.size(); ++i)
            pair_id = std::max(pair_id, std::fabs((te[i + 1] - te[i]) - d.delta * (te[i] - te[i - 1]) + c) /
                                            std::fabs(te[i + 1] - te[i]));
        const Real target = (p.omega1 + d.gamma1 * p.omega2) / (1 + d.gamma1);
        for (std::size_t i = 0; i < to.size(); ++i) {
            const Real v = (p.omega1 * (to[i] - te[i]) + p.omega2 * (te[i + 1] - to[i])) / (te[i + 1] - te[i]);
            omega_id = std::max(omega_id, std::fabs(v - target) / target);
        }
        r.check(rec < 1e-12L && pair_id < 1e-12L && omega_id < 1e-12L,
                "recurrence, pair and omega identities to 1e-12 relative");

        Real shift = 0;
        for (std::size_t N = 0; N + 2 < h.pairs(); ++N) shift = std::max(shift, shift_invariance_check(h, d, N).max_dev);
        r.check(shift < 1e-9L, "idealized shift deviation < 1e-9");
        r.note("idealized: T~0 err " + sci(std::fabs(a.T0 - kT2)) + ", identities " + sci(rec) + "/" +
               sci(pair_id) + "/" + sci(omega_id) + ", shift " + sci(shift));
    }
    {
        const SystemParams p = perturbed_params();
        const DerivedConstants d = derive_constants(p);
        const HittingSequence h = generate_hitting_sequence(reference_seed(), p, kPairs);
        const AdjustedTimes a = adjusted_sequence(h, d);
        Real tail = 0;
        for (std::size_t i = 10; i < a.t_even.size(); ++i)
            tail = std::max(tail, std::fabs(h.times[2 * i] - a.t_even[i]));
        r.check(tail < 1e-6L, "perturbed |t_2i - t~_2i| < 1e-6 from i=10");
        const ShiftCheck sc = shift_invariance_check(h, d, 2);
        r.check(sc.max_dev <= sc.bound, "perturbed shift deviation within residual tail");
        r.note("perturbed: |t_2i - t~_2i| from i=10 " + sci(tail) + ", shift N=2 " + sci(sc.max_dev) +
               " <= " + sci(sc.bound));
    }
}

void criterion7(Report& r) {
    const SystemParams p = reference_params();
    const SystemParams g = matched_params();
    const Real inv = max_relative_deviation(invariant_tuple(p), invariant_tuple(g));
    r.check(inv < 1e-12L, "invariant tuples equal to 1e-12");

    const ConjugacyReport rep = verify_conjugacy(reference_seed(), p, g, 10, 1e-8L);
    r.check(rep.verdict && rep.max_dev < 1e-8L, "matched conjugacy max_dev < 1e-8 over 10 pairs");
    r.check(std::fabs(rep.image_times[1] - kT1) < 1e-9L, "t_bar_1 = 2.995732");

    SystemParams bad = g;
    bad.C2 = 6.6L;
    const ConjugacyReport neg = verify_conjugacy(reference_seed(), p, bad, 10, 1e-8L, ConjugacyMode::Diagnostic);
    r.check(!neg.verdict && neg.first_failing_pair <= 3, "mismatched control fails by pair 3");
    Real min_growth = std::numeric_limits<Real>::infinity();
    for (std::size_t i = 2; 2 * i < neg.time_deviations.size(); ++i)
        min_growth = std::min(min_growth, neg.time_deviations[2 * i] / neg.time_deviations[2 * i - 2]);
    r.check(min_growth > 1.5L, "mismatched deviations grow geometrically");
    r.note("matched max_dev " + sci(rep.max_dev) + ", control fails at pair " +
           std::to_string(neg.first_failing_pair) + " with growth factor >= " + sci(min_growth));
}

void criterion8(Report& r) {
    const SystemParams p = reference_params();
    const DerivedConstants d = derive_constants(p);
    SectionPoint q = SectionPoint::make(Chart::In1, 1 / p.a, d.log_a + std::log(0.1L));
    Real worst = 0;
    bool finite = true;
    for (int k = 0; k < 30; ++k) {
        const Transit next = poincare(q, p);
        const Real expect = d.log_a + d.delta * q.log_coord;
        worst = std::max(worst, std::fabs(next.point.log_coord - expect) / std::max<Real>(1, std::fabs(expect)));
        finite = finite && std::isfinite(next.point.log_coord) && std::isfinite(next.time) &&
                 std::isfinite(next.point.theta) && next.point.log_coord < 0;
        q = next.point;
    }
    r.check(finite, "30 iterates finite, no underflow");
    r.check(worst < 1e-10L, "log-height recursion to 1e-10 (relative)");
    r.note("ln z after 30 returns " + sci(q.log_coord) + ", recursion error " + sci(worst));
}

struct Criterion {
    const char* title;
    void (*run)(Report&);
};

constexpr Criterion kCriteria[kCriterionCount] = {
    {"hitting times vs closed form and ODE oracle", criterion1},
    {"lemma limits, idealized", criterion2},
    {"lemma limits and decay, perturbed", criterion3},
    {"sojourn and pair ratios", criterion4},
    {"historic Birkhoff averages", criterion5},
    {"adjusted times", criterion6},
    {"conjugacy and verify-all runtime", criterion7},
    {"robustness of 30 Poincare iterates", criterion8},
};

} // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriterionCount) throw ConstraintViolation("criterion id in [1, 8] violated");
    const Criterion& c = kCriteria[id - 1];
    CriterionResult out;
    out.id = id;
    out.title = c.title;
    const auto start = Clock::now();
    Report r;
    try {
        c.run(r);
    } catch (const std::exception& e) {
        r.check(false, std::string("exception: ") + e.what());
    }
    out.seconds = seconds_since(start);
    out.passed = r.ok;
    out.detail = r.detail.str();
    if (out.detail.size() >= 2) out.detail.resize(out.detail.size() - 2);
    return out;
}

std::vector<CriterionResult> run_acceptance() {
    const auto start = Clock::now();
    std::vector<std::future<CriterionResult>> jobs;
    for (int id = 1; id <= kCriterionCount; ++id) jobs.push_back(std::async(std::launch::async, run_criterion, id));
    std::vector<CriterionResult> results;
    for (auto& j : jobs) results.push_back(j.get());
    const double total = seconds_since(start);

    CriterionResult& c7 = results[6];
    const bool fast = total < 10.0;
    c7.passed = c7.passed && fast;
    c7.detail += std::string(fast ? "; " : "; FAILED total runtime < 10s; ") + "suite runtime " + sci(total) + "s";
    return results;
}

std::string format_result(const CriterionResult& r) {
    char head[128];
    std::snprintf(head, sizeof head, "[%s] criterion %d: %s (%.3fs)", r.passed ? "PASS" : "FAIL", r.id,
                  r.title.c_str(), r.seconds);
    return std::string(head) + (r.detail.empty() ? "" : " -- " + r.detail);
}

} // namespace bykov::harness
