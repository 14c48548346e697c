#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nabla/grid.hpp"

namespace nabla {

/// Weight of f(t - lag) in the fractional sum of the given order evaluated
/// at t: (lag + 1)^(order - 1) / Gamma(order).
///
/// Order 0 is the identity sum, i.e. the Kronecker delta in `lag`.
double sum_kernel_weight(double order, std::int64_t lag);

/// Precomputed sum_kernel_weight(order, lag) for lag = 0 .. size() - 1.
class SumKernel {
 public:
  SumKernel(double order, std::size_t count);

  double order() const noexcept { return order_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t lag) const noexcept { return weights_[lag]; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  double order_;
  std::vector<double> weights_;
};

/// k-th whole-order backward difference at t. Needs f on [t - k, t].
double nabla_power(const GridFunction& f, int k, double t);

/// Nabla fractional sum based at a:
///   sum_{s=a+1}^{t} (t - s + 1)^(nu - 1) / Gamma(nu) * f(s).
/// Zero at t = a. f must cover [a + 1, t].
double frac_sum(const GridFunction& f, FracOrder nu, double a, double t);

/// The fractional sum on [a, f.last()].
GridFunction frac_sum(const GridFunction& f, FracOrder nu, double a);

/// Riemann-Liouville difference: N-fold backward difference of the
/// (N - nu)-order sum, N = ceil(nu). Requires t >= a + N. For integer nu
/// the inner sum is the identity, so f must also be defined at t - N.
double rl_frac_diff(const GridFunction& f, FracOrder nu, double a, double t);

/// Caputo difference based at a: the (N - nu)-order sum of the N-th
/// backward difference. f must be defined from a - N + 1; the value at
/// t = a is the empty sum 0.
double caputo_diff(const GridFunction& f, FracOrder nu, double a, double t);

/// Caputo difference on [a, f.last()].
GridFunction caputo_diff(const GridFunction& f, FracOrder nu, double a);

/// Whole-order discrete Taylor expansion of f about a with remainder;
/// reproduces f(t) for t >= a. f must be defined from a - n + 1.
double taylor_whole(const GridFunction& f, int n, double a, double t);

/// Caputo Taylor expansion: the first ceil(nu) backward differences at a
/// plus the nu-order sum of the Caputo difference. Reproduces f(t).
double taylor_caputo(const GridFunction& f, FracOrder nu, double a, double t);

}  // namespace nabla
