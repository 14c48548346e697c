#pragma once

#include <optional>
#include <ostream>

#include <json.hpp>

#include "nabla/cli/problem_file.hpp"

namespace nabla::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInvalid = 2, kSingular = 3 };

/// Tolerance precedence: explicit flag, then NABLA_FRAC_TOL, then the
/// library default.
double resolve_tolerance(std::optional<double> flag);

/// Residuals of `x` against the problem: equation max-norm plus the initial
/// or boundary conditions. Used on the solution as re-read from disk.
nlohmann::json residual_report(const ProblemFile& pf, const GridFunction& x, const BvpOptions& opts);

/// Parses "lo:hi[:step]" or "v1,v2,...". Empty results are an error.
std::vector<double> parse_range(std::string_view text, const std::string& field);

/// Entry point behind the nabla_frac binary.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nabla::cli
