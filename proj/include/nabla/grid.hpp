#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nabla/errors.hpp"

namespace nabla {

/// Signed integer distance `to - from` between two lattice points.
///
/// Points handed to the library are reals, but every meaningful difference
/// between them is an integer. Throws DomainError when the difference is
/// not an integer (to within 1e-9).
std::int64_t lattice_offset(double from, double to);

/// The finite lattice {base, base + 1, ..., base + length}.
class Domain {
 public:
  Domain(double base, std::size_t length);

  /// Domain running from `first` to `last` inclusive; `last - first` must be
  /// a non-negative integer.
  static Domain between(double first, double last);

  double base() const noexcept { return base_; }
  double last() const noexcept { return base_ + static_cast<double>(length_); }
  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return length_ + 1; }

  double point(std::size_t k) const noexcept { return base_ + static_cast<double>(k); }
  bool contains(double t) const noexcept;
  /// Offset k with point(k) == t; DomainError if t is off the lattice or
  /// outside the domain.
  std::size_t offset_of(double t) const;

  friend bool operator==(const Domain& lhs, const Domain& rhs) noexcept {
    return lhs.base_ == rhs.base_ && lhs.length_ == rhs.length_;
  }

 private:
  double base_;
  std::size_t length_;
};

/// A real-valued function tabulated on a Domain. Immutable.
class GridFunction {
 public:
  GridFunction(Domain domain, std::vector<double> values);

  static GridFunction constant(const Domain& domain, double value);

  template <typename F>
  static GridFunction tabulate(const Domain& domain, F&& f) {
    std::vector<double> values;
    values.reserve(domain.size());
    for (std::size_t k = 0; k < domain.size(); ++k) values.push_back(f(domain.point(k)));
    return GridFunction(domain, std::move(values));
  }

  const Domain& domain() const noexcept { return domain_; }
  double base() const noexcept { return domain_.base(); }
  double last() const noexcept { return domain_.last(); }

  /// Value at the lattice point t. Never extrapolates.
  double operator()(double t) const { return values_[domain_.offset_of(t)]; }
  double at_offset(std::size_t k) const noexcept { return values_[k]; }
  std::span<const double> values() const& noexcept { return values_; }
  // A span into a temporary would dangle.
  std::span<const double> values() const&& = delete;

  /// Copy restricted to [first, last] (both inside the domain).
  GridFunction restrict_to(double first, double last) const;

 private:
  Domain domain_;
  std::vector<double> values_;
};

/// Fractional order nu > 0 together with N = ceil(nu).
class FracOrder {
 public:
  explicit FracOrder(double nu);

  double value() const noexcept { return nu_; }
  int ceiling() const noexcept { return ceil_n_; }
  bool is_integer() const noexcept { return static_cast<double>(ceil_n_) == nu_; }

 private:
  double nu_;
  int ceil_n_;
};

/// Generalized rising function t^(nu) = Gamma(t + nu) / Gamma(t).
///
/// Conventions:
///   - t a non-positive integer, t + nu not: 0.
///   - t and t + nu both non-positive integers: the finite limit
///     (-1)^nu Gamma(1 - t) / Gamma(1 - t - nu).
///   - t + nu a non-positive integer, t not: PoleError.
/// Integer nu with |nu| <= 64 is evaluated as an exact product; other
/// orders go through log-gamma.
double rising(double t, double nu);

/// Backward difference f(t) - f(t - 1), defined on [base + 1, last].
GridFunction nabla_diff(const GridFunction& f);

/// Definite nabla integral: sum of f(s) for s = c + 1 .. d, or 0 when d <= c.
double nabla_integral(const GridFunction& f, double c, double d);

}  // namespace nabla
