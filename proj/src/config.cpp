#include "nicholson/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <string>

#include "nicholson/errors.hpp"

namespace nicholson {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("'" + std::string(key) + "': not a number: '" + std::string(v) + "'");
    }
    return out;
}

std::size_t to_count(std::string_view key, std::string_view v) {
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("'" + std::string(key) + "': not a count: '" + std::string(v) + "'");
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("'" + std::string(key) + "': not a boolean: '" + std::string(v) + "'");
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    const auto num = [&] { return to_double(key, value); };
    if (key == "delta") cfg.params.delta = num();
    else if (key == "harvest" || key == "H") cfg.params.harvest = num();
    else if (key == "rho") cfg.params.rho = num();
    else if (key == "sigma") cfg.params.sigma = num();
    else if (key == "r") cfg.params.r = num();
    else if (key == "beta") cfg.overrides.beta = num();
    else if (key == "epsilon") cfg.overrides.epsilon = num();
    else if (key == "alpha") cfg.overrides.alpha = num();
    else if (key == "t0") cfg.overrides.t0 = num();
    else if (key == "lambda") cfg.overrides.lambda = num();
    else if (key == "grid.t_min") cfg.grid.t_min = num();
    else if (key == "grid.t_max") cfg.grid.t_max = num();
    else if (key == "grid.h") cfg.grid.h = num();
    else if (key == "tol") cfg.tol = num();
    else if (key == "max_iter") cfg.max_iter = to_count(key, value);
    else if (key == "save_count") cfg.save_count = to_count(key, value);
    else if (key == "check_weighted") cfg.check_weighted = to_bool(key, value);
    else if (key == "require_hypotheses") cfg.require_hypotheses = to_bool(key, value);
    else if (key == "outputs") cfg.outputs = std::string(value);
    else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override must look like key=value: '" + std::string(assignment) + "'");
    }
    apply_setting(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void validate(const RunConfig& cfg) {
    try {
        const auto& p = cfg.params;
        ModelParams::make(p.delta, p.harvest, p.rho, p.sigma, p.r);
        GridSpec::make(cfg.grid.t_min, cfg.grid.t_max, cfg.grid.h);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        try {
            apply_setting(base, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    validate(base);
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    return parse_config(in, std::move(base));
}

}  // namespace nicholson
