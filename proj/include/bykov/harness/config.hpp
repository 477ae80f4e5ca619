#pragma once

#include "bykov/historic_averages.hpp"
#include "bykov/hitting_times.hpp"
#include "bykov/model_core.hpp"
#include "bykov/real.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace bykov::harness {

/// Everything one CLI run needs.
///
/// JSON layout:
///   {
///     "params":    {"C1":2, "E1":1, "omega1":1, "C2":3, "E2":1.5, "omega2":2, "a":0.5,
///                   "perturbation": {"c1":0.1, "c2":0.1, "eps":0.5}},
///     "params_g":  {...},                       optional, second system for `conjugacy`
///     "seed":      {"theta0":1.0, "z0":0.1},     optional
///     "n_pairs":   12,                           optional
///     "observable": {"kind":"piecewise_constant"|"smooth", "g_sigma1":0, "g_sigma2":1,
///                    "exponent":2, "g_boundary":0.5},   optional
///     "tolerances": {"historic":1e-3, "conjugacy":1e-8}  optional
///   }
struct ExperimentConfig {
    SystemParams params;
    std::optional<SystemParams> params_g;
    Real theta0 = 1.0L;
    Real z0 = 0.1L;
    std::size_t n_pairs = kDefaultPairs;
    Observable observable;
    Real tol_historic = 1e-3L;
    Real tol_conjugacy = 1e-8L;
};

/// The reference system (2, 1, 1, 3, 1.5, 2, 0.5) seeded at theta0 = 1, z0 = 0.1.
ExperimentConfig reference_config();

/// Parses and validates a JSON config.
///
/// Throws ParseError (with a JSON path such as `$.params.a`) for malformed or missing
/// fields and ConstraintViolation when a value breaks a model inequality.
ExperimentConfig parse_config(std::string_view text);

/// Reads `path` and parses it; IoError if the file cannot be read.
ExperimentConfig load_config(const std::string& path);

/// Checks every precondition of the config eagerly (used after CLI overrides).
void validate_config(const ExperimentConfig& cfg);

} // namespace bykov::harness
