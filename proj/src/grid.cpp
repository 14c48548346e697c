#include "nabla/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace nabla {
namespace {

constexpr double kIntegerSlack = 1e-9;
constexpr int kMaxProductOrder = 64;

bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-12 * std::max(1.0, std::abs(x)); }

bool is_nonpositive_integer(double x) { return is_integer(x) && std::round(x) <= 0.0; }

std::string format_point(double t) {
  std::ostringstream os;
  os.precision(17);
  os << t;
  return os.str();
}

// Gamma(t + m) / Gamma(t) for integer m, as a finite product. Callers make
// sure no factor in the denominator vanishes.
double integer_rising(double t, long m) {
  double r = 1.0;
  if (m >= 0) {
    for (long i = 0; i < m; ++i) r *= t + static_cast<double>(i);
  } else {
    for (long i = 1; i <= -m; ++i) r /= t - static_cast<double>(i);
  }
  return r;
}

double log_gamma_ratio(double t, double nu) {
  int sign_num = 1;
  int sign_den = 1;
  const double num = ::lgamma_r(t + nu, &sign_num);
  const double den = ::lgamma_r(t, &sign_den);
  return static_cast<double>(sign_num * sign_den) * std::exp(num - den);
}

}  // namespace

std::int64_t lattice_offset(double from, double to) {
  const double diff = to - from;
  const double k = std::round(diff);
  if (!std::isfinite(diff) || std::abs(diff - k) > kIntegerSlack) {
    throw DomainError("point " + format_point(to) + " is not on the lattice through " +
                      format_point(from));
  }
  return static_cast<std::int64_t>(k);
}

Domain::Domain(double base, std::size_t length) : base_(base), length_(length) {
  if (!std::isfinite(base)) throw InvalidArgument("domain base must be finite");
}

Domain Domain::between(double first, double last) {
  const auto n = lattice_offset(first, last);
  if (n < 0) {
    throw DomainError("empty domain: last point " + format_point(last) + " precedes first point " +
                      format_point(first));
  }
  return Domain(first, static_cast<std::size_t>(n));
}

bool Domain::contains(double t) const noexcept {
  const double diff = t - base_;
  const double k = std::round(diff);
  return std::isfinite(diff) && std::abs(diff - k) <= kIntegerSlack && k >= 0.0 &&
         k <= static_cast<double>(length_);
}

std::size_t Domain::offset_of(double t) const {
  const auto k = lattice_offset(base_, t);
  if (k < 0 || static_cast<std::size_t>(k) > length_) {
    throw DomainError("point " + format_point(t) + " outside domain [" + format_point(base_) + ", " +
                      format_point(last()) + "]");
  }
  return static_cast<std::size_t>(k);
}

GridFunction::GridFunction(Domain domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
  if (values_.size() != domain_.size()) {
    throw InvalidArgument("grid function needs " + std::to_string(domain_.size()) +
                          " values, got " + std::to_string(values_.size()));
  }
}

GridFunction GridFunction::constant(const Domain& domain, double value) {
  return GridFunction(domain, std::vector<double>(domain.size(), value));
}

GridFunction GridFunction::restrict_to(double first, double last) const {
  const auto lo = domain_.offset_of(first);
  const auto hi = domain_.offset_of(last);
  if (hi < lo) throw DomainError("restriction range is empty");
  return GridFunction(Domain(domain_.point(lo), hi - lo),
                      std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(lo),
                                          values_.begin() + static_cast<std::ptrdiff_t>(hi) + 1));
}

FracOrder::FracOrder(double nu) : nu_(nu), ceil_n_(0) {
  if (!std::isfinite(nu) || nu <= 0.0) {
    throw InvalidArgument("fractional order nu must be positive, got " + format_point(nu));
  }
  ceil_n_ = static_cast<int>(std::ceil(nu));
}

double rising(double t, double nu) {
  if (!std::isfinite(t) || !std::isfinite(nu)) throw InvalidArgument("rising: non-finite argument");
  const double top = t + nu;
  const bool t_pole = is_nonpositive_integer(t);
  const bool top_pole = is_nonpositive_integer(top);

  if (top_pole && !t_pole) {
    throw PoleError("rising(" + format_point(t) + ", " + format_point(nu) +
                    "): Gamma(t + nu) has a pole and Gamma(t) does not");
  }
  if (t_pole && !top_pole) return 0.0;
  if (t_pole && top_pole) {
    // Both poles: nu is an integer and the product form is the limit.
    return integer_rising(std::round(t), std::lround(top - t));
  }
  if (is_integer(nu) && std::abs(nu) <= kMaxProductOrder) {
    return integer_rising(t, std::lround(nu));
  }
  return log_gamma_ratio(t, nu);
}

GridFunction nabla_diff(const GridFunction& f) {
  const auto& dom = f.domain();
  if (dom.length() < 1) throw DomainError("nabla_diff needs at least two points");
  std::vector<double> out(dom.length());
  for (std::size_t k = 1; k < dom.size(); ++k) out[k - 1] = f.at_offset(k) - f.at_offset(k - 1);
  return GridFunction(Domain(dom.base() + 1.0, dom.length() - 1), std::move(out));
}

double nabla_integral(const GridFunction& f, double c, double d) {
  // f(c) never enters the sum, so c may sit one step before the domain.
  const auto& dom = f.domain();
  const auto lo = lattice_offset(dom.base(), c);
  const auto hi = lattice_offset(dom.base(), d);
  if (hi <= lo) return 0.0;
  if (lo < -1 || hi > static_cast<std::int64_t>(dom.length())) {
    throw DomainError("nabla_integral: summation range leaves the domain of f");
  }
  double sum = 0.0;
  for (auto k = lo + 1; k <= hi; ++k) sum += f.at_offset(static_cast<std::size_t>(k));
  return sum;
}

}  // namespace nabla
