#pragma once

#include <algorithm>
#include <cmath>

namespace nabla {

inline constexpr double kDefaultRelTol = 1e-9;
inline constexpr double kDefaultAbsTol = 1e-12;
/// Relative threshold below which a determinant or pivot counts as zero.
inline constexpr double kDefaultSingularTol = 1e-10;

/// |x - y| <= max(abs_tol, rel_tol * max(|x|, |y|)).
inline bool approx_equal(double x, double y, double rel_tol = kDefaultRelTol,
                         double abs_tol = kDefaultAbsTol) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return std::abs(x - y) <= std::max(abs_tol, rel_tol * scale);
}

}  // namespace nabla
