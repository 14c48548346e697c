#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nabla/grid.hpp"
#include "nabla/selfadjoint.hpp"
#include "nabla/tolerance.hpp"

namespace nabla {

/// Sturm-Liouville boundary data
///   alpha x(a) - beta nabla x(a + 1) = A,
///   gamma x(b) + delta nabla x(b)    = B,
/// with alpha^2 + beta^2 > 0 and gamma^2 + delta^2 > 0.
class SturmLiouvilleBC {
 public:
  SturmLiouvilleBC(double alpha, double beta, double gamma, double delta, double A = 0.0,
                   double B = 0.0);

  /// x(a) = A, x(b) = B.
  static SturmLiouvilleBC dirichlet(double A = 0.0, double B = 0.0) {
    return SturmLiouvilleBC(1.0, 0.0, 1.0, 0.0, A, B);
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double delta() const noexcept { return delta_; }
  double A() const noexcept { return A_; }
  double B() const noexcept { return B_; }

  SturmLiouvilleBC homogeneous() const { return {alpha_, beta_, gamma_, delta_, 0.0, 0.0}; }

 private:
  double alpha_;
  double beta_;
  double gamma_;
  double delta_;
  double A_;
  double B_;
};

struct BvpOptions {
  /// Use the Caputo difference based at a instead of the plain backward
  /// difference in the boundary row at b.
  bool caputo_boundary_at_b = false;
  /// Relative threshold on the boundary determinant and on dense pivots.
  double singular_tol = kDefaultSingularTol;
};

/// alpha x(a) - beta nabla x(a + 1). x must cover [a, a + 1].
double left_boundary(const SturmLiouvilleBC& bc, const GridFunction& x, double a);
/// gamma x(b) + delta nabla x(b), or the Caputo variant. x must cover [a, b].
double right_boundary(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                      const GridFunction& x, const BvpOptions& opts = {});

/// rho = alpha gamma S(b) + alpha delta / p(b) + beta gamma / p(a + 1), S the
/// nu-order sum of 1/p based at a. Requires q == 0 (HypothesisError otherwise).
double rho(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc);

struct SolvabilityReport {
  std::optional<double> rho;  // present when q == 0
  double det_D = 0.0;
  /// |det_D| divided by the product of the boundary-row norms.
  double relative_det = 0.0;
  bool solvable = false;
};

/// Determinant test on the 2x2 boundary matrix of the canonical homogeneous
/// basis (see homogeneous_basis).
SolvabilityReport solvability(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                              const BvpOptions& opts = {});

/// Green's function G(t, s) = u(t, s) for t <= s and v(t, s) = u + x (x the
/// Cauchy function) for s <= t, on [a, b] x [a, b].
class GreensTable {
 public:
  GreensTable(double a, std::size_t steps, FracOrder nu, std::vector<double> u,
              std::vector<double> v);

  double a() const noexcept { return a_; }
  double b() const noexcept { return a_ + static_cast<double>(steps_); }
  std::size_t steps() const noexcept { return steps_; }
  FracOrder nu() const noexcept { return nu_; }

  double operator()(double t, double s) const;
  /// G by offsets from a.
  double at(std::size_t kt, std::size_t ks) const noexcept {
    return kt <= ks ? u_[kt * (steps_ + 1) + ks] : v_[kt * (steps_ + 1) + ks];
  }
  /// u(t, s), defined for every t in [a, b].
  double u(double t, double s) const;
  /// v(t, s), defined for t >= s.
  double v(double t, double s) const;

 private:
  double a_;
  std::size_t steps_;
  FracOrder nu_;
  std::vector<double> u_;
  std::vector<double> v_;
};

/// Builds the Green's function of the homogeneous BVP column by column.
/// Throws SingularError when the BVP is not uniquely solvable.
GreensTable greens_function(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                            const BvpOptions& opts = {});

/// Closed-form Green's function of nabla C x(t + 1) = 0, x(a) = x(b) = 0.
double greens_closed_form_conjugate(double a, double b, double nu, double t, double s);

/// Solution of L_a x = h with boundary data bc: the homogeneous solution
/// matching (A, B) plus the Green's-function convolution with h.
GridFunction solve_bvp(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                       const BvpOptions& opts = {});

/// Row-major linear system over the unknowns x(a), ..., x(b).
struct DenseSystem {
  std::size_t size = 0;
  std::vector<double> matrix;
  std::vector<double> rhs;

  double at(std::size_t row, std::size_t col) const noexcept { return matrix[row * size + col]; }
};

/// Row 0: boundary row at a. Rows 1 .. n-1: L_a at a + k expanded in the
/// unknowns. Row n: boundary row at b.
DenseSystem assemble_bvp_system(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                                const BvpOptions& opts = {});
/// Same interior rows, with x(a) = A and nabla x(a + 1) = B in place of
/// the boundary rows.
DenseSystem assemble_ivp_system(const SelfAdjointProblem& prob, InitialData init);

/// Gaussian elimination with partial pivoting on the row-equilibrated
/// system. Throws SingularSystemError on a pivot below `pivot_tol`.
std::vector<double> solve_dense(const DenseSystem& system, double pivot_tol = kDefaultSingularTol);

GridFunction dense_oracle_solve(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                                const BvpOptions& opts = {});
GridFunction dense_oracle_solve_ivp(const SelfAdjointProblem& prob, InitialData init,
                                    double pivot_tol = kDefaultSingularTol);

/// Extremes of the conjugate (p = 1, q = 0, Dirichlet) Green's function
/// against the four bounds it is known to satisfy.
struct InequalityMargins {
  double max_g = 0.0;           // claim <= 0
  double min_g = 0.0;
  double lower_bound = 0.0;     // (b-a)/4 * Gamma(b-a+1) / (Gamma(nu+1) Gamma(b-a+nu))
  double max_abs_sum = 0.0;     // max_t sum_s |G(t, s)|
  double abs_sum_bound = 0.0;   // (b-a)^2 / (4 Gamma(nu+2))
  double max_grad_sum = 0.0;    // max_{t >= a+1} sum_s |G(t, s) - G(t-1, s)|
  double grad_sum_bound = 0.0;  // (b-a) / (nu+1)

  double margin1() const noexcept { return max_g; }                       // <= 0
  double margin2() const noexcept { return min_g + lower_bound; }         // >= 0
  double margin3() const noexcept { return max_abs_sum - abs_sum_bound; } // <= 0
  double margin4() const noexcept { return max_grad_sum - grad_sum_bound; } // <= 0

  /// All four claims, allowing `slack` of rounding in the favourable direction.
  bool all_hold(double slack = kDefaultAbsTol) const noexcept {
    return margin1() <= slack && margin2() >= -slack && margin3() <= slack && margin4() <= slack;
  }
};

InequalityMargins inequality_margins(double a, double b, double nu);

}  // namespace nabla
