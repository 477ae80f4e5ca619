#include "bykov/harness/experiment.hpp"

#include "bykov/errors.hpp"
#include "bykov/harness/acceptance.hpp"

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace bykov::harness {

namespace {

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

Real at_or_nan(const IndexedSeries& s, std::size_t i) { return s.contains(i) ? s[i] : kNaN; }

SectionPoint seed_of(const ExperimentConfig& cfg) {
    return SectionPoint::make(Chart::Out2, cfg.theta0, std::log(cfg.z0));
}

} // namespace

std::optional<Subcommand> parse_subcommand(std::string_view name) {
    if (name == "simulate") return Subcommand::Simulate;
    if (name == "diagnostics") return Subcommand::Diagnostics;
    if (name == "birkhoff") return Subcommand::Birkhoff;
    if (name == "adjusted") return Subcommand::Adjusted;
    if (name == "conjugacy") return Subcommand::Conjugacy;
    if (name == "verify-all") return Subcommand::VerifyAll;
    return std::nullopt;
}

std::string_view to_string(Subcommand s) {
    switch (s) {
    case Subcommand::Simulate: return "simulate";
    case Subcommand::Diagnostics: return "diagnostics";
    case Subcommand::Birkhoff: return "birkhoff";
    case Subcommand::Adjusted: return "adjusted";
    case Subcommand::Conjugacy: return "conjugacy";
    case Subcommand::VerifyAll: return "verify-all";
    }
    return "?";
}

CsvTable hitting_table(const HittingSequence& h) {
    CsvTable t{{"index", "time", "chart", "theta_lifted", "log_coord"}, {}};
    for (std::size_t k = 0; k < h.times.size(); ++k) {
        const SectionPoint& q = h.points[k];
        t.rows.push_back({std::to_string(k), format_real(h.times[k]), std::string(to_string(q.chart)),
                          format_real(q.theta_lifted), format_real(q.log_coord)});
    }
    return t;
}

CsvTable diagnostics_table(const DiagnosticSeries& s) {
    CsvTable t{{"i", "lemma1", "lemma2", "lemma3", "residual", "ratio1", "ratio2", "ratio3", "ratio4"}, {}};
    const std::size_t end = std::max({s.lemma1.end(), s.lemma2.end(), s.lemma3.end(), s.residuals.end(),
                                      s.ratio1.end(), s.ratio2.end(), s.ratio3.end(), s.ratio4.end()});
    for (std::size_t i = 0; i < end; ++i) {
        t.rows.push_back({std::to_string(i), format_real(at_or_nan(s.lemma1, i)),
                          format_real(at_or_nan(s.lemma2, i)), format_real(at_or_nan(s.lemma3, i)),
                          format_real(at_or_nan(s.residuals, i)), format_real(at_or_nan(s.ratio1, i)),
                          format_real(at_or_nan(s.ratio2, i)), format_real(at_or_nan(s.ratio3, i)),
                          format_real(at_or_nan(s.ratio4, i))});
    }
    return t;
}

CsvTable birkhoff_table(const AverageSeries& s) {
    CsvTable t{{"parity", "index", "time", "average", "predicted", "abs_error"}, {}};
    const std::size_t n = std::max(s.even_averages.size(), s.odd_averages.size());
    auto row = [&](const char* parity, std::size_t k, Real time, Real avg, Real pred) {
        t.rows.push_back({parity, std::to_string(k), format_real(time), format_real(avg), format_real(pred),
                          format_real(std::fabs(avg - pred))});
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (i < s.odd_averages.size())
            row("odd", AverageSeries::odd_hitting_index(i), s.odd_times[i], s.odd_averages[i], s.predicted_odd);
        if (i < s.even_averages.size())
            row("even", AverageSeries::even_hitting_index(i), s.even_times[i], s.even_averages[i],
                s.predicted_even);
    }
    return t;
}

CsvTable adjusted_table(const HittingSequence& h, const AdjustedTimes& a) {
    CsvTable t{{"i", "T", "Ttil", "t_even", "t_til_even", "t_odd", "t_til_odd", "diff"}, {}};
    for (std::size_t i = 0; i < a.t_even.size(); ++i) {
        const bool pair = i < a.T_seq.size();
        const Real t_even = h.times.at(2 * i);
        t.rows.push_back({std::to_string(i), format_real(pair ? a.T[i] : kNaN),
                          format_real(pair ? a.T_seq[i] : kNaN), format_real(t_even), format_real(a.t_even[i]),
                          format_real(pair ? h.times.at(2 * i + 1) : kNaN),
                          format_real(pair ? a.t_odd[i] : kNaN), format_real(t_even - a.t_even[i])});
    }
    return t;
}

std::string conjugacy_json(const ConjugacyReport& r) {
    using json = nlohmann::ordered_json;
    auto to_doubles = [](const std::vector<Real>& v) {
        std::vector<double> out;
        out.reserve(v.size());
        for (Real x : v) out.push_back(static_cast<double>(x));
        return out;
    };
    const SystemParams& g = r.target_params;
    json j;
    j["verdict"] = r.verdict;
    j["max_dev"] = static_cast<double>(r.max_dev);
    j["deviations"] = to_doubles(r.time_deviations);
    j["image"] = {{"z0", static_cast<double>(std::exp(r.image_point.z0_log))},
                  {"rho1", static_cast<double>(std::exp(r.image_point.rho1_log))},
                  {"theta0", static_cast<double>(r.image_point.theta0)},
                  {"theta0_reduced", static_cast<double>(r.image_point.theta0_reduced)},
                  {"log_z0", static_cast<double>(r.image_point.z0_log)},
                  {"log_rho1", static_cast<double>(r.image_point.rho1_log)}};
    j["tolerance"] = static_cast<double>(r.tolerance);
    j["invariants_match"] = r.invariants_match;
    j["invariant_deviation"] = static_cast<double>(r.invariant_deviation);
    j["charts_match"] = r.charts_match;
    j["first_failing_pair"] = r.first_failing_pair;
    j["adjusted_times"] = to_doubles(r.adjusted_times);
    j["image_times"] = to_doubles(r.image_times);
    j["target_params"] = {{"C1", static_cast<double>(g.C1)},         {"E1", static_cast<double>(g.E1)},
                          {"omega1", static_cast<double>(g.omega1)}, {"C2", static_cast<double>(g.C2)},
                          {"E2", static_cast<double>(g.E2)},         {"omega2", static_cast<double>(g.omega2)},
                          {"a", static_cast<double>(g.a)}};
    return j.dump(2) + "\n";
}

int run_experiment(const ExperimentConfig& cfg, Subcommand sub, const std::filesystem::path& out_dir,
                   std::ostream& log) {
    validate_config(cfg);
    const SectionPoint q0 = seed_of(cfg);
    spdlog::debug("running {} with {} pairs", to_string(sub), cfg.n_pairs);

    switch (sub) {
    case Subcommand::Simulate: {
        const HittingSequence h = generate_hitting_sequence(q0, cfg.params, cfg.n_pairs);
        emit_csv(hitting_table(h), out_dir / "hitting.csv");
        log << "wrote " << (out_dir / "hitting.csv").string() << " (" << h.times.size() << " hitting times)\n";
        return kExitOk;
    }
    case Subcommand::Diagnostics: {
        const HittingSequence h = generate_hitting_sequence(q0, cfg.params, cfg.n_pairs);
        emit_csv(diagnostics_table(full_diagnostics(h, cfg.params)), out_dir / "diagnostics.csv");
        log << "wrote " << (out_dir / "diagnostics.csv").string() << "\n";
        return kExitOk;
    }
    case Subcommand::Birkhoff: {
        const HittingSequence h = generate_hitting_sequence(q0, cfg.params, cfg.n_pairs);
        const AverageSeries s = birkhoff_average(h, cfg.params, cfg.observable, h.last_index());
        emit_csv(birkhoff_table(s), out_dir / "birkhoff.csv");
        log << "wrote " << (out_dir / "birkhoff.csv").string() << "\n";
        if (s.even_averages.size() < 4 || s.odd_averages.size() < 4) {
            log << "historic certificate skipped: fewer than 4 averages per parity\n";
            return kExitOk;
        }
        const HistoricCertificate c = historic_certificate(s, cfg.tol_historic);
        log << "historic: " << (c.historic ? "true" : "false") << ", gap " << format_real(c.gap) << "\n";
        return c.historic ? kExitOk : kExitVerdictFalse;
    }
    case Subcommand::Adjusted: {
        const HittingSequence h = generate_hitting_sequence(q0, cfg.params, cfg.n_pairs);
        const AdjustedTimes a = adjusted_sequence(h, derive_constants(cfg.params));
        emit_csv(adjusted_table(h, a), out_dir / "adjusted.csv");
        log << "wrote " << (out_dir / "adjusted.csv").string() << " (T~0 = " << format_real(a.T0)
            << ", offset = " << format_real(a.offset) << ")\n";
        return kExitOk;
    }
    case Subcommand::Conjugacy: {
        if (!cfg.params_g) throw ParseError("$.params_g", "conjugacy needs a second system");
        // mismatched invariants are a verdict, not a usage error
        const ConjugacyReport r = verify_conjugacy(q0, cfg.params, *cfg.params_g, cfg.n_pairs, cfg.tol_conjugacy,
                                                   ConjugacyMode::Diagnostic);
        write_file_atomic(out_dir / "conjugacy.json", conjugacy_json(r));
        log << "wrote " << (out_dir / "conjugacy.json").string() << " (verdict "
            << (r.verdict ? "true" : "false") << ", max_dev " << format_real(r.max_dev) << ")\n";
        return r.verdict ? kExitOk : kExitVerdictFalse;
    }
    case Subcommand::VerifyAll: {
        const std::vector<CriterionResult> results = run_acceptance();
        bool all = true;
        for (const auto& r : results) {
            log << format_result(r) << "\n";
            all = all && r.passed;
        }
        return all ? kExitOk : kExitVerdictFalse;
    }
    }
    return kExitError;
}

} // namespace bykov::harness
