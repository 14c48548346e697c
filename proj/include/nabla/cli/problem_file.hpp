#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nabla/greens.hpp"
#include "nabla/selfadjoint.hpp"

namespace nabla::cli {

/// A problem-file or flag value that fails validation. `field()` names the
/// offending entry.
class ValidationError : public InvalidArgument {
 public:
  ValidationError(std::string field, const std::string& message)
      : InvalidArgument("`" + field + "`: " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class ProblemKind { caputo_ivp, selfadjoint_ivp, bvp };

std::string_view to_string(ProblemKind kind);

/// Coefficient given as a constant, a builtin name ("one", "zero",
/// "identity" / "t"), or an explicit list aligned to its lattice.
class CoefficientSpec {
 public:
  using Builtin = std::string;
  using Values = std::vector<double>;

  CoefficientSpec() : value_(0.0) {}
  explicit CoefficientSpec(double c) : value_(c) {}
  explicit CoefficientSpec(Builtin name) : value_(std::move(name)) {}
  explicit CoefficientSpec(Values values) : value_(std::move(values)) {}

  /// Parses a command-line spelling: a number, a builtin, or a
  /// comma-separated list.
  static CoefficientSpec parse(std::string_view text, const std::string& field);

  /// Tabulates on `domain`; ValidationError naming `field` on a length
  /// mismatch or unknown builtin.
  GridFunction realize(const Domain& domain, const std::string& field) const;

 private:
  std::variant<double, Builtin, Values> value_;
};

struct ProblemFile {
  ProblemKind kind = ProblemKind::bvp;
  double a = 0.0;
  double b = 0.0;
  double nu = 0.0;
  CoefficientSpec p{1.0};
  CoefficientSpec q{0.0};
  CoefficientSpec h{0.0};
  std::optional<SturmLiouvilleBC> bc;
  InitialData init;
  std::vector<double> c;  // Caputo IVP initial differences
};

ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile load_problem(const std::filesystem::path& path);

/// Parses "alpha,beta,gamma,delta,A,B".
SturmLiouvilleBC parse_bc(std::string_view text, const std::string& field);

SelfAdjointProblem to_selfadjoint(const ProblemFile& pf);
CaputoIvpSpec to_caputo(const ProblemFile& pf);

}  // namespace nabla::cli
