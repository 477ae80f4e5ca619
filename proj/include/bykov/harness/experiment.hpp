#pragma once

#include "bykov/adjusted_times.hpp"
#include "bykov/conjugacy.hpp"
#include "bykov/harness/config.hpp"
#include "bykov/harness/csv.hpp"
#include "bykov/historic_averages.hpp"
#include "bykov/hitting_times.hpp"
#include "bykov/invariant_metrics.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace bykov::harness {

enum class Subcommand { Simulate, Diagnostics, Birkhoff, Adjusted, Conjugacy, VerifyAll };

std::optional<Subcommand> parse_subcommand(std::string_view name);
std::string_view to_string(Subcommand s);

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerdictFalse = 2;

/// index,time,chart,theta_lifted,log_coord
CsvTable hitting_table(const HittingSequence& h);

/// i,lemma1,lemma2,lemma3,residual,ratio1,ratio2,ratio3,ratio4; undefined cells empty.
CsvTable diagnostics_table(const DiagnosticSeries& s);

/// parity,index,time,average,predicted,abs_error, ordered by hitting index.
CsvTable birkhoff_table(const AverageSeries& s);

/// i,T,Ttil,t_even,t_til_even,t_odd,t_til_odd,diff with diff = t_{2i} - t~_{2i}
/// (offset-anchored).
CsvTable adjusted_table(const HittingSequence& h, const AdjustedTimes& a);

/// {"verdict", "max_dev", "deviations", "image": {"z0", "rho1", "theta0"}, ...}
std::string conjugacy_json(const ConjugacyReport& r);

/// Runs one subcommand, writing its output under `out_dir` and a short summary to
/// `log`. Returns kExitOk, kExitVerdictFalse or throws on error.
int run_experiment(const ExperimentConfig& cfg, Subcommand sub, const std::filesystem::path& out_dir,
                   std::ostream& log);

} // namespace bykov::harness
