#include "bykov/harness/config.hpp"

#include "bykov/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace bykov::harness {

using nlohmann::json;

namespace {

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    return j;
}

Real read_number(const json& obj, const char* key, const std::string& path) {
    const std::string here = path + "." + key;
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(here, std::string("missing field \"") + key + "\"");
    if (!it->is_number()) throw ParseError(here, "expected a number");
    return static_cast<Real>(it->get<double>());
}

Real read_number_or(const json& obj, const char* key, const std::string& path, Real fallback) {
    return obj.contains(key) ? read_number(obj, key, path) : fallback;
}

SystemParams read_params(const json& j, const std::string& path) {
    require_object(j, path);
    SystemParams p;
    p.C1 = read_number(j, "C1", path);
    p.E1 = read_number(j, "E1", path);
    p.omega1 = read_number(j, "omega1", path);
    p.C2 = read_number(j, "C2", path);
    p.E2 = read_number(j, "E2", path);
    p.omega2 = read_number(j, "omega2", path);
    p.a = read_number(j, "a", path);
    if (j.contains("perturbation")) {
        const std::string sub = path + ".perturbation";
        const json& q = require_object(j.at("perturbation"), sub);
        PerturbationSpec s;
        s.c1 = read_number(q, "c1", sub);
        s.c2 = read_number(q, "c2", sub);
        s.eps = read_number_or(q, "eps", sub, s.eps);
        p.perturbation = s;
    }
    return p;
}

Observable read_observable(const json& j, const std::string& path) {
    require_object(j, path);
    Observable g;
    if (j.contains("kind")) {
        const json& k = j.at("kind");
        if (!k.is_string()) throw ParseError(path + ".kind", "expected a string");
        const std::string kind = k.get<std::string>();
        if (kind == "piecewise_constant")
            g.kind = ObservableKind::PiecewiseConstant;
        else if (kind == "smooth")
            g.kind = ObservableKind::Smooth;
        else
            throw ParseError(path + ".kind", "unknown observable kind \"" + kind + "\"");
    }
    g.g_sigma1 = read_number_or(j, "g_sigma1", path, g.g_sigma1);
    g.g_sigma2 = read_number_or(j, "g_sigma2", path, g.g_sigma2);
    g.exponent = read_number_or(j, "exponent", path, g.exponent);
    if (j.contains("g_boundary")) g.g_boundary = read_number(j, "g_boundary", path);
    return g;
}

} // namespace

ExperimentConfig reference_config() {
    ExperimentConfig cfg;
    cfg.params = {2, 1, 1, 3, 1.5L, 2, 0.5L, std::nullopt};
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    validate_params(cfg.params);
    if (cfg.params_g) validate_params(*cfg.params_g);
    if (!(cfg.z0 > 0 && cfg.z0 < 1)) throw ConstraintViolation("z0 in (0,1) violated");
    if (!std::isfinite(cfg.theta0)) throw ConstraintViolation("theta0 finite violated");
    if (cfg.n_pairs < 1 || cfg.n_pairs > kMaxPairs)
        throw ConstraintViolation("n_pairs in [1, " + std::to_string(kMaxPairs) + "] violated");
    validate_observable(cfg.observable);
    if (!(cfg.tol_historic > 0)) throw ConstraintViolation("tolerances.historic > 0 violated");
    if (!(cfg.tol_conjugacy > 0)) throw ConstraintViolation("tolerances.conjugacy > 0 violated");
}

ExperimentConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("$", std::string("invalid JSON: ") + e.what());
    }
    require_object(root, "$");

    ExperimentConfig cfg = reference_config();
    if (!root.contains("params")) throw ParseError("$.params", "missing field \"params\"");
    cfg.params = read_params(root.at("params"), "$.params");
    if (root.contains("params_g")) cfg.params_g = read_params(root.at("params_g"), "$.params_g");
    if (root.contains("seed")) {
        const json& s = require_object(root.at("seed"), "$.seed");
        cfg.theta0 = read_number_or(s, "theta0", "$.seed", cfg.theta0);
        cfg.z0 = read_number_or(s, "z0", "$.seed", cfg.z0);
    }
    if (root.contains("n_pairs")) {
        const json& n = root.at("n_pairs");
        if (!n.is_number_integer() || n.get<long long>() < 1)
            throw ParseError("$.n_pairs", "expected a positive integer");
        cfg.n_pairs = static_cast<std::size_t>(n.get<long long>());
    }
    if (root.contains("observable")) cfg.observable = read_observable(root.at("observable"), "$.observable");
    if (root.contains("tolerances")) {
        const json& t = require_object(root.at("tolerances"), "$.tolerances");
        cfg.tol_historic = read_number_or(t, "historic", "$.tolerances", cfg.tol_historic);
        cfg.tol_conjugacy = read_number_or(t, "conjugacy", "$.tolerances", cfg.tol_conjugacy);
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace bykov::harness
