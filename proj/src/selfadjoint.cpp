#include "nabla/selfadjoint.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "nabla/frac_calculus.hpp"

namespace nabla {
namespace {

bool same_lattice(const Domain& dom, double first, std::size_t length) {
  return dom.length() == length && std::abs(dom.base() - first) <= 1e-9;
}

void check_coefficient(const GridFunction& g, double first, std::size_t length, const char* name) {
  if (!same_lattice(g.domain(), first, length)) {
    throw InvalidArgument(std::string("coefficient ") + name + " must be given on [" +
                          std::to_string(first) + ", " +
                          std::to_string(first + static_cast<double>(length)) + "] (" +
                          std::to_string(length + 1) + " values)");
  }
  for (double v : g.values()) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string("coefficient ") + name + " is not finite");
  }
}

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

// Marches L_s x = h forward from offset `start` (relative to a) to b, with
// x(s) = x0 and nabla x(s + 1) = d1. Only the forcing values at offsets
// start + 1 .. n - 1 are read; `forced == false` treats h as zero. Returns
// x at offsets start .. n.
std::vector<double> march(const SelfAdjointProblem& prob, const SumKernel& w, std::size_t start,
                          double x0, double d1, bool forced) {
  const std::size_t n = prob.steps();
  const std::size_t len = n - start;
  std::vector<double> x(len + 1, 0.0);
  std::vector<double> d(len + 1, 0.0);
  x[0] = x0;
  if (len == 0) return x;
  d[1] = d1;
  x[1] = x0 + d1;

  const auto& p = prob.p();
  const auto& q = prob.q();
  const auto& h = prob.h();
  for (std::size_t i = 1; i + 1 <= len && start + i <= n - 1; ++i) {
    const std::size_t k = start + i;  // equation at t = a + k
    double caputo_now = 0.0;
    double carry = 0.0;
    for (std::size_t j = i; j >= 1; --j) {
      caputo_now += w[i - j] * d[j];
      carry += w[i + 1 - j] * d[j];
    }
    const double pk = p.at_offset(k - 1);
    const double pk1 = p.at_offset(k);
    const double forcing = forced ? h.at_offset(k - 1) : 0.0;
    d[i + 1] = (forcing - q.at_offset(k - 1) * x[i] + pk * caputo_now) / pk1 - carry;
    x[i + 1] = x[i] + d[i + 1];
  }
  return x;
}

}  // namespace

SelfAdjointProblem::SelfAdjointProblem(double a, double b, FracOrder nu, GridFunction p,
                                       GridFunction q, GridFunction h)
    : a_(a), b_(b), steps_(0), nu_(nu), p_(std::move(p)), q_(std::move(q)), h_(std::move(h)) {
  const auto n = lattice_offset(a, b);
  if (n < 2) throw InvalidArgument("self-adjoint problem needs b - a >= 2");
  if (nu.value() > 1.0) throw InvalidArgument("self-adjoint operator needs 0 < nu <= 1");
  steps_ = static_cast<std::size_t>(n);
  check_coefficient(p_, a + 1.0, steps_ - 1, "p");
  check_coefficient(q_, a + 1.0, steps_ - 2, "q");
  check_coefficient(h_, a + 1.0, steps_ - 2, "h");
  for (double v : p_.values()) {
    if (!(v > 0.0)) throw InvalidArgument("coefficient p must be positive");
  }
}

bool SelfAdjointProblem::has_zero_potential() const noexcept {
  const auto v = q_.values();
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

SelfAdjointProblem SelfAdjointProblem::with_forcing(GridFunction h) const {
  return SelfAdjointProblem(a_, b_, nu_, p_, q_, std::move(h));
}

SelfAdjointProblem SelfAdjointProblem::homogeneous() const {
  return with_forcing(GridFunction::constant(interior(), 0.0));
}

CaputoIvpSpec::CaputoIvpSpec(double a, FracOrder nu, std::vector<double> c, GridFunction h)
    : a_(a), nu_(nu), c_(std::move(c)), h_(std::move(h)) {
  if (c_.size() != static_cast<std::size_t>(nu_.ceiling())) {
    throw InvalidArgument("Caputo IVP needs ceil(nu) = " + std::to_string(nu_.ceiling()) +
                          " initial values, got " + std::to_string(c_.size()));
  }
  if (lattice_offset(a_ + 1.0, h_.base()) != 0) {
    throw InvalidArgument("Caputo IVP forcing must start at a + 1");
  }
}

KernelTable::KernelTable(double a, std::size_t steps, std::vector<double> entries)
    : a_(a), steps_(steps), entries_(std::move(entries)) {
  if (entries_.size() != (steps_ + 1) * (steps_ + 1)) {
    throw InvalidArgument("kernel table has the wrong number of entries");
  }
}

double KernelTable::operator()(double t, double s) const {
  const Domain dom(a_, steps_);
  return at(dom.offset_of(t), dom.offset_of(s));
}

GridFunction KernelTable::column(double s) const {
  const Domain dom(a_, steps_);
  const auto ks = dom.offset_of(s);
  std::vector<double> values;
  for (std::size_t kt = ks; kt <= steps_; ++kt) values.push_back(at(kt, ks));
  return GridFunction(Domain(s, steps_ - ks), std::move(values));
}

double apply_L(const SelfAdjointProblem& prob, const GridFunction& x, double t) {
  const auto k = lattice_offset(prob.a(), t);
  if (k < 1 || k > static_cast<std::int64_t>(prob.steps()) - 1) {
    throw DomainError("apply_L: t must lie in [a + 1, b - 1]");
  }
  const double a = prob.a();
  const auto nu = prob.nu();
  return prob.p()(t + 1.0) * caputo_diff(x, nu, a, t + 1.0) -
         prob.p()(t) * caputo_diff(x, nu, a, t) + prob.q()(t) * x(t);
}

GridFunction apply_L(const SelfAdjointProblem& prob, const GridFunction& x) {
  const auto caputo = caputo_diff(x.restrict_to(prob.a(), prob.b()), prob.nu(), prob.a());
  const auto interior = prob.interior();
  std::vector<double> out(interior.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t k = i + 1;
    out[i] = prob.p().at_offset(k) * caputo.at_offset(k + 1) -
             prob.p().at_offset(k - 1) * caputo.at_offset(k) +
             prob.q().at_offset(i) * x(prob.a() + static_cast<double>(k));
  }
  return GridFunction(interior, std::move(out));
}

GridFunction solve_caputo_ivp_stepping(const CaputoIvpSpec& spec, double b) {
  const double a = spec.a();
  const int n = spec.nu().ceiling();
  const auto m_signed = lattice_offset(a, b);
  if (m_signed < 1) throw DomainError("Caputo IVP needs b >= a + 1");
  const auto m = static_cast<std::size_t>(m_signed);
  if (!spec.h().domain().contains(b)) throw DomainError("Caputo IVP forcing does not reach b");

  // values[j] = f(a - n + 1 + j)
  const std::size_t hist = static_cast<std::size_t>(n);
  std::vector<double> values(hist + m, 0.0);
  // Recover f(a - k) from the prescribed differences nabla^k f(a) = c_k.
  for (int k = 0; k < n; ++k) {
    double known = 0.0;
    for (int i = 0; i < k; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      known += sign * binomial(k, i) * values[hist - 1 - static_cast<std::size_t>(i)];
    }
    const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
    values[hist - 1 - static_cast<std::size_t>(k)] = sign_k * (spec.c()[static_cast<std::size_t>(k)] - known);
  }

  const SumKernel w(static_cast<double>(n) - spec.nu().value(), m);
  std::vector<double> top(m + 1, 0.0);  // nabla^N f(a + k)
  for (std::size_t k = 1; k <= m; ++k) {
    double memory = 0.0;
    for (std::size_t j = k - 1; j >= 1; --j) memory += w[k - j] * top[j];
    top[k] = spec.h().at_offset(k - 1) - memory;

    const std::size_t idx = hist - 1 + k;
    double rest = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      rest += sign * binomial(n, i) * values[idx - static_cast<std::size_t>(i)];
    }
    values[idx] = top[k] - rest;
  }
  return GridFunction(Domain(a - n + 1.0, hist - 1 + m), std::move(values));
}

GridFunction solve_caputo_ivp_closed(const CaputoIvpSpec& spec, double b) {
  const double a = spec.a();
  const int n = spec.nu().ceiling();
  const auto m_signed = lattice_offset(a, b);
  if (m_signed < 1) throw DomainError("Caputo IVP needs b >= a + 1");
  if (!spec.h().domain().contains(b)) throw DomainError("Caputo IVP forcing does not reach b");
  const Domain dom(a - n + 1.0, static_cast<std::size_t>(n - 1 + m_signed));

  return GridFunction::tabulate(dom, [&](double t) {
    const auto lag = static_cast<double>(lattice_offset(a, t));
    double poly = 0.0;
    for (int k = 0; k < n; ++k) {
      poly += rising(lag, k) / factorial(k) * spec.c()[static_cast<std::size_t>(k)];
    }
    return poly + (lag >= 1.0 ? frac_sum(spec.h(), spec.nu(), a, t) : 0.0);
  });
}

GridFunction solve_selfadjoint_ivp(const SelfAdjointProblem& prob, InitialData init) {
  const SumKernel w(1.0 - prob.nu().value(), prob.steps() + 1);
  return GridFunction(prob.solution_domain(), march(prob, w, 0, init.A, init.B, true));
}

KernelTable cauchy_function(const SelfAdjointProblem& prob, Execution exec) {
  const std::size_t n = prob.steps();
  const std::size_t width = n + 1;
  const SumKernel w(1.0 - prob.nu().value(), width);
  std::vector<double> entries(width * width, 0.0);

  auto fill_column = [&](std::size_t ks) {
    if (ks == n) return;  // x(b, b) = 0
    const auto col = march(prob, w, ks, 0.0, 1.0 / prob.p().at_offset(ks), false);
    for (std::size_t i = 0; i < col.size(); ++i) entries[(ks + i) * width + ks] = col[i];
  };

  if (exec == Execution::parallel) {
    const std::size_t workers =
        std::max<std::size_t>(2, std::min<std::size_t>(std::thread::hardware_concurrency(), width));
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t id = 0; id < workers; ++id) {
      pool.emplace_back([&, id] {
        for (std::size_t ks = id; ks < width; ks += workers) fill_column(ks);
      });
    }
  } else {
    for (std::size_t ks = 0; ks < width; ++ks) fill_column(ks);
  }
  return KernelTable(prob.a(), n, std::move(entries));
}

GridFunction variation_of_constants(const SelfAdjointProblem& prob, InitialData init) {
  return variation_of_constants(prob, init, cauchy_function(prob));
}

GridFunction variation_of_constants(const SelfAdjointProblem& prob, InitialData init,
                                    const KernelTable& cauchy) {
  const std::size_t n = prob.steps();
  if (cauchy.steps() != n || std::abs(cauchy.a() - prob.a()) > 1e-9) {
    throw InvalidArgument("Cauchy table does not match the problem lattice");
  }
  const auto homogeneous = solve_selfadjoint_ivp(prob.homogeneous(), init);
  std::vector<double> y(homogeneous.values().begin(), homogeneous.values().end());
  // h(b) never contributes since x(b, b) = 0.
  for (std::size_t kt = 1; kt <= n; ++kt) {
    double sum = 0.0;
    for (std::size_t ks = 1; ks <= std::min(kt, n - 1); ++ks) {
      sum += cauchy.at(kt, ks) * prob.h().at_offset(ks - 1);
    }
    y[kt] += sum;
  }
  return GridFunction(prob.solution_domain(), std::move(y));
}

HomogeneousBasis homogeneous_basis(const SelfAdjointProblem& prob) {
  const auto free = prob.homogeneous();
  return {solve_selfadjoint_ivp(free, {1.0, 0.0}), solve_selfadjoint_ivp(free, {0.0, 1.0})};
}

}  // namespace nabla
