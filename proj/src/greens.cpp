#include "nabla/greens.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nabla/frac_calculus.hpp"

namespace nabla {
namespace {

struct BoundaryMatrix {
  double r11, r12, r21, r22;

  double det() const { return r11 * r22 - r12 * r21; }
  double scale() const { return std::hypot(r11, r12) * std::hypot(r21, r22); }
};

BoundaryMatrix boundary_matrix(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                               const HomogeneousBasis& basis, const BvpOptions& opts) {
  return {left_boundary(bc, basis.x1, prob.a()), left_boundary(bc, basis.x2, prob.a()),
          right_boundary(prob, bc, basis.x1, opts), right_boundary(prob, bc, basis.x2, opts)};
}

bool is_singular(const BoundaryMatrix& m, double tol) {
  const double scale = m.scale();
  return !(scale > 0.0) || std::abs(m.det()) <= tol * scale;
}

// Solves m * (c1, c2) = (f1, f2) by Cramer's rule.
std::pair<double, double> solve2(const BoundaryMatrix& m, double f1, double f2) {
  const double d = m.det();
  return {(f1 * m.r22 - m.r12 * f2) / d, (m.r11 * f2 - f1 * m.r21) / d};
}

}  // namespace

SturmLiouvilleBC::SturmLiouvilleBC(double alpha, double beta, double gamma, double delta, double A,
                                   double B)
    : alpha_(alpha), beta_(beta), gamma_(gamma), delta_(delta), A_(A), B_(B) {
  for (double v : {alpha, beta, gamma, delta, A, B}) {
    if (!std::isfinite(v)) throw InvalidArgument("boundary data must be finite");
  }
  if (alpha * alpha + beta * beta <= 0.0) {
    throw InvalidArgument("boundary data: alpha and beta cannot both vanish");
  }
  if (gamma * gamma + delta * delta <= 0.0) {
    throw InvalidArgument("boundary data: gamma and delta cannot both vanish");
  }
}

double left_boundary(const SturmLiouvilleBC& bc, const GridFunction& x, double a) {
  return bc.alpha() * x(a) - bc.beta() * (x(a + 1.0) - x(a));
}

double right_boundary(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                      const GridFunction& x, const BvpOptions& opts) {
  const double b = prob.b();
  const double diff = opts.caputo_boundary_at_b ? caputo_diff(x, prob.nu(), prob.a(), b)
                                                : x(b) - x(b - 1.0);
  return bc.gamma() * x(b) + bc.delta() * diff;
}

double rho(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc) {
  if (!prob.has_zero_potential()) {
    throw HypothesisError("rho criterion requires q identically zero");
  }
  const auto& p = prob.p();
  const auto inv_p = GridFunction::tabulate(p.domain(), [&](double t) { return 1.0 / p(t); });
  const double sum = frac_sum(inv_p, prob.nu(), prob.a(), prob.b());
  return bc.alpha() * bc.gamma() * sum + bc.alpha() * bc.delta() / p(prob.b()) +
         bc.beta() * bc.gamma() / p(prob.a() + 1.0);
}

SolvabilityReport solvability(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                              const BvpOptions& opts) {
  const auto basis = homogeneous_basis(prob);
  const auto m = boundary_matrix(prob, bc, basis, opts);
  SolvabilityReport report;
  if (prob.has_zero_potential()) report.rho = rho(prob, bc);
  report.det_D = m.det();
  const double scale = m.scale();
  report.relative_det = scale > 0.0 ? std::abs(report.det_D) / scale : 0.0;
  report.solvable = !is_singular(m, opts.singular_tol);
  return report;
}

GreensTable::GreensTable(double a, std::size_t steps, FracOrder nu, std::vector<double> u,
                         std::vector<double> v)
    : a_(a), steps_(steps), nu_(nu), u_(std::move(u)), v_(std::move(v)) {
  const std::size_t cells = (steps_ + 1) * (steps_ + 1);
  if (u_.size() != cells || v_.size() != cells) {
    throw InvalidArgument("Green's table has the wrong number of entries");
  }
}

double GreensTable::operator()(double t, double s) const {
  const Domain dom(a_, steps_);
  return at(dom.offset_of(t), dom.offset_of(s));
}

double GreensTable::u(double t, double s) const {
  const Domain dom(a_, steps_);
  return u_[dom.offset_of(t) * (steps_ + 1) + dom.offset_of(s)];
}

double GreensTable::v(double t, double s) const {
  const Domain dom(a_, steps_);
  const auto kt = dom.offset_of(t);
  const auto ks = dom.offset_of(s);
  if (kt < ks) throw DomainError("v(t, s) is only defined for t >= s");
  return v_[kt * (steps_ + 1) + ks];
}

GreensTable greens_function(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                            const BvpOptions& opts) {
  const auto basis = homogeneous_basis(prob);
  const auto m = boundary_matrix(prob, bc, basis, opts);
  if (is_singular(m, opts.singular_tol)) {
    throw SingularError("boundary value problem is not uniquely solvable (det D = " +
                        std::to_string(m.det()) + ")");
  }

  const auto cauchy = cauchy_function(prob);
  const std::size_t n = prob.steps();
  const std::size_t width = n + 1;
  const Domain dom = prob.solution_domain();
  std::vector<double> u(width * width, 0.0);
  std::vector<double> v(width * width, 0.0);

  for (std::size_t ks = 0; ks < width; ++ks) {
    // Cauchy column extended by zero to t < s.
    std::vector<double> col(width, 0.0);
    for (std::size_t kt = ks; kt < width; ++kt) col[kt] = cauchy.at(kt, ks);
    const GridFunction xs(dom, std::move(col));

    const auto [c1, c2] = solve2(m, 0.0, -right_boundary(prob, bc, xs, opts));
    for (std::size_t kt = 0; kt < width; ++kt) {
      const double uk = c1 * basis.x1.at_offset(kt) + c2 * basis.x2.at_offset(kt);
      u[kt * width + ks] = uk;
      v[kt * width + ks] = kt >= ks ? uk + xs.at_offset(kt) : 0.0;
    }
  }
  return GreensTable(prob.a(), n, prob.nu(), std::move(u), std::move(v));
}

double greens_closed_form_conjugate(double a, double b, double nu, double t, double s) {
  const Domain dom = Domain::between(a, b);
  const auto kt = dom.offset_of(t);
  const auto ks = dom.offset_of(s);
  const double gamma1 = std::tgamma(1.0 + nu);
  const double n = static_cast<double>(dom.length());
  const double lt = static_cast<double>(kt);
  const double ls = static_cast<double>(ks);
  double g = -rising(n - ls, nu) * rising(lt, nu) / (gamma1 * rising(n, nu));
  if (ks <= kt) g += rising(lt - ls, nu) / gamma1;
  return g;
}

GridFunction solve_bvp(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                       const BvpOptions& opts) {
  const auto green = greens_function(prob, bc, opts);
  const auto basis = homogeneous_basis(prob);
  const auto m = boundary_matrix(prob, bc, basis, opts);
  const auto [c1, c2] = solve2(m, bc.A(), bc.B());

  const std::size_t n = prob.steps();
  std::vector<double> y(n + 1);
  for (std::size_t kt = 0; kt <= n; ++kt) {
    double sum = 0.0;
    // h is only given on [a + 1, b - 1]; G(t, b) vanishes anyway.
    for (std::size_t ks = 1; ks <= n - 1; ++ks) sum += green.at(kt, ks) * prob.h().at_offset(ks - 1);
    y[kt] = c1 * basis.x1.at_offset(kt) + c2 * basis.x2.at_offset(kt) + sum;
  }
  return GridFunction(prob.solution_domain(), std::move(y));
}

InequalityMargins inequality_margins(double a, double b, double nu) {
  const auto steps = lattice_offset(a, b);
  if (steps < 2) throw DomainError("inequality_margins needs b - a >= 2");
  if (!(nu > 0.0 && nu < 1.0)) throw InvalidArgument("inequality_margins needs 0 < nu < 1");

  const std::size_t n = static_cast<std::size_t>(steps);
  const Domain edge(a + 1.0, n - 1);
  const Domain inner(a + 1.0, n - 2);
  const SelfAdjointProblem prob(a, b, FracOrder(nu), GridFunction::constant(edge, 1.0),
                                GridFunction::constant(inner, 0.0),
                                GridFunction::constant(inner, 0.0));
  const auto green = greens_function(prob, SturmLiouvilleBC::dirichlet());

  InequalityMargins out;
  const double len = static_cast<double>(n);
  out.lower_bound = (len / 4.0) * std::tgamma(len + 1.0) / (std::tgamma(nu + 1.0) * std::tgamma(len + nu));
  out.abs_sum_bound = len * len / (4.0 * std::tgamma(nu + 2.0));
  out.grad_sum_bound = len / (nu + 1.0);

  out.max_g = green.at(0, 0);
  out.min_g = green.at(0, 0);
  for (std::size_t kt = 0; kt <= n; ++kt) {
    double abs_sum = 0.0;
    double grad_sum = 0.0;
    for (std::size_t ks = 0; ks <= n; ++ks) {
      const double g = green.at(kt, ks);
      out.max_g = std::max(out.max_g, g);
      out.min_g = std::min(out.min_g, g);
      if (ks >= 1) {
        abs_sum += std::abs(g);
        if (kt >= 1) grad_sum += std::abs(g - green.at(kt - 1, ks));
      }
    }
    out.max_abs_sum = std::max(out.max_abs_sum, abs_sum);
    if (kt >= 1) out.max_grad_sum = std::max(out.max_grad_sum, grad_sum);
  }
  return out;
}

}  // namespace nabla
