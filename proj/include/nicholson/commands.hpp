#pragma once

// CLI subcommands. Each returns the process exit code: 0 success, 1 a certified
// condition failed (or the run broke ordering), 2 unusable input.

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "nicholson/config.hpp"

namespace nicholson {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

/// Residual and cross-check budget for an accepted heteroclinic profile.
inline constexpr double kSolutionBudget = 5e-3;

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Writes upper.csv, lower.csv, residual_upper.csv, residual_lower.csv, compat.csv.
int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Writes iterates.csv, final.csv and run.txt (key=value metadata).
int cmd_iterate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct VerifyOptions {
    /// Profile to load; defaults to <outputs>/final.csv.
    std::optional<std::filesystem::path> profile;
    /// Run the iteration instead of loading a profile.
    bool run_pipeline = false;
};

int cmd_verify(const RunConfig& cfg, const VerifyOptions& vopt, std::ostream& out,
               std::ostream& err);

}  // namespace nicholson
