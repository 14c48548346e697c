#include "nabla/frac_calculus.hpp"

#include <cmath>
#include <string>

namespace nabla {
namespace {

// Point-wise sums over lattices shorter than this compute weights on the
// fly; longer ones build a SumKernel first.
constexpr std::size_t kKernelTableThreshold = 512;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= static_cast<double>(i);
  return r;
}

// Offset of t from a, rejecting t < a.
std::size_t steps_from(double a, double t, const char* what) {
  const auto k = lattice_offset(a, t);
  if (k < 0) throw DomainError(std::string(what) + ": evaluation point precedes the base point");
  return static_cast<std::size_t>(k);
}

// Requires f to be defined at every point of [first, last].
void require_coverage(const GridFunction& f, double first, double last, const char* what) {
  if (!f.domain().contains(first) || !f.domain().contains(last)) {
    throw DomainError(std::string(what) + ": function is not defined on the required range");
  }
}

// sum_{j=0}^{m-1} w(order, j) * g(m - j), summed from the unit-weight term
// outward. g is indexed by step count from the base point.
template <typename G>
double convolve(double order, std::size_t m, G&& g) {
  double sum = 0.0;
  if (m >= kKernelTableThreshold) {
    const SumKernel w(order, m);
    for (std::size_t j = 0; j < m; ++j) sum += w[j] * g(m - j);
  } else {
    for (std::size_t j = 0; j < m; ++j) {
      sum += sum_kernel_weight(order, static_cast<std::int64_t>(j)) * g(m - j);
    }
  }
  return sum;
}

}  // namespace

double sum_kernel_weight(double order, std::int64_t lag) {
  if (order < 0.0) throw InvalidArgument("fractional sum order must be non-negative");
  if (lag < 0) throw DomainError("negative kernel lag");
  if (order == 0.0) return lag == 0 ? 1.0 : 0.0;
  // Gamma(order) / Gamma(order) exactly, whatever log-gamma rounds to.
  if (lag == 0) return 1.0;
  return rising(static_cast<double>(lag) + 1.0, order - 1.0) / std::tgamma(order);
}

SumKernel::SumKernel(double order, std::size_t count) : order_(order) {
  weights_.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    weights_.push_back(sum_kernel_weight(order, static_cast<std::int64_t>(j)));
  }
}

double nabla_power(const GridFunction& f, int k, double t) {
  if (k < 0) throw InvalidArgument("nabla_power: negative order");
  require_coverage(f, t - k, t, "nabla_power");
  const auto top = f.domain().offset_of(t);
  double sum = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binomial(k, i) * f.at_offset(top - static_cast<std::size_t>(i));
  }
  return sum;
}

double frac_sum(const GridFunction& f, FracOrder nu, double a, double t) {
  const auto m = steps_from(a, t, "frac_sum");
  if (m == 0) return 0.0;
  require_coverage(f, a + 1.0, t, "frac_sum");
  const auto first = f.domain().offset_of(a + 1.0);
  return convolve(nu.value(), m, [&](std::size_t k) { return f.at_offset(first + k - 1); });
}

GridFunction frac_sum(const GridFunction& f, FracOrder nu, double a) {
  const auto m = steps_from(a, f.last(), "frac_sum");
  if (m > 0) require_coverage(f, a + 1.0, f.last(), "frac_sum");
  const SumKernel w(nu.value(), m);
  std::vector<double> out(m + 1, 0.0);
  if (m > 0) {
    const auto first = f.domain().offset_of(a + 1.0);
    for (std::size_t k = 1; k <= m; ++k) {
      double sum = 0.0;
      for (std::size_t j = 0; j < k; ++j) sum += w[j] * f.at_offset(first + k - 1 - j);
      out[k] = sum;
    }
  }
  return GridFunction(Domain(a, m), std::move(out));
}

double rl_frac_diff(const GridFunction& f, FracOrder nu, double a, double t) {
  const int n = nu.ceiling();
  const auto m = steps_from(a, t, "rl_frac_diff");
  if (m < static_cast<std::size_t>(n)) {
    throw DomainError("rl_frac_diff: evaluation point must lie at or beyond a + ceil(nu)");
  }
  if (nu.is_integer()) return nabla_power(f, n, t);

  const FracOrder inner(static_cast<double>(n) - nu.value());
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binomial(n, i) * frac_sum(f, inner, a, t - i);
  }
  return sum;
}

double caputo_diff(const GridFunction& f, FracOrder nu, double a, double t) {
  const int n = nu.ceiling();
  const auto m = steps_from(a, t, "caputo_diff");
  if (m == 0) return 0.0;
  require_coverage(f, a - n + 1.0, t, "caputo_diff");
  if (nu.is_integer()) return nabla_power(f, n, t);
  return convolve(static_cast<double>(n) - nu.value(), m,
                  [&](std::size_t k) { return nabla_power(f, n, a + static_cast<double>(k)); });
}

GridFunction caputo_diff(const GridFunction& f, FracOrder nu, double a) {
  const int n = nu.ceiling();
  const auto m = steps_from(a, f.last(), "caputo_diff");
  if (m > 0) require_coverage(f, a - n + 1.0, f.last(), "caputo_diff");

  std::vector<double> diffs(m + 1, 0.0);
  for (std::size_t k = 1; k <= m; ++k) diffs[k] = nabla_power(f, n, a + static_cast<double>(k));

  std::vector<double> out(m + 1, 0.0);
  const SumKernel w(static_cast<double>(n) - nu.value(), m);
  for (std::size_t k = 1; k <= m; ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += w[j] * diffs[k - j];
    out[k] = sum;
  }
  return GridFunction(Domain(a, m), std::move(out));
}

double taylor_whole(const GridFunction& f, int n, double a, double t) {
  if (n < 1) throw InvalidArgument("taylor_whole: order must be at least 1");
  const auto m = steps_from(a, t, "taylor_whole");
  require_coverage(f, a - n + 1.0, t, "taylor_whole");

  double poly = 0.0;
  for (int k = 0; k < n; ++k) {
    poly += nabla_power(f, k, a) * rising(static_cast<double>(m), k) / factorial(k);
  }
  const double remainder = convolve(static_cast<double>(n), m, [&](std::size_t k) {
    return nabla_power(f, n, a + static_cast<double>(k));
  });
  return poly + remainder;
}

double taylor_caputo(const GridFunction& f, FracOrder nu, double a, double t) {
  const int n = nu.ceiling();
  const auto m = steps_from(a, t, "taylor_caputo");
  require_coverage(f, a - n + 1.0, t, "taylor_caputo");

  double poly = 0.0;
  for (int k = 0; k < n; ++k) {
    poly += nabla_power(f, k, a) * rising(static_cast<double>(m), k) / factorial(k);
  }
  const double remainder = convolve(nu.value(), m, [&](std::size_t k) {
    return caputo_diff(f, nu, a, a + static_cast<double>(k));
  });
  return poly + remainder;
}

}  // namespace nabla
