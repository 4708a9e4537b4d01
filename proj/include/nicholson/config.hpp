#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "nicholson/model.hpp"
#include "nicholson/profile.hpp"

namespace nicholson {

/// Everything a CLI run needs. Defaults reproduce the reference parameter set
/// (delta=1, H=2, rho=6, sigma=0.15, r=1.8) with computed constants.
struct RunConfig {
    ModelParams params{1.0, 2.0, 6.0, 0.15, 1.8};
    ConstantOverrides overrides;
    GridSpec grid{-30.0, 20.0, 0.01};
    double tol = 1e-8;
    std::size_t max_iter = 500;
    std::size_t save_count = 4;
    bool check_weighted = false;
    bool require_hypotheses = true;
    std::filesystem::path outputs = ".";
};

/// Applies one `key=value` setting. Keys: delta, harvest, rho, sigma, r, beta, epsilon,
/// alpha, t0, lambda, grid.t_min, grid.t_max, grid.h, tol, max_iter, save_count,
/// check_weighted, require_hypotheses, outputs. Throws ConfigError.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Parses `key = value` lines; `#` starts a comment. Validates the result.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Applies a `key=value` override string.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// Throws ConfigError unless params and grid satisfy their invariants.
void validate(const RunConfig& cfg);

}  // namespace nicholson
