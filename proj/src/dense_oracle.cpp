// Dense linear-system route to the same solutions the marching and
// Green's-function code produce. Kernel weights come from the ratio
// recurrence w(j) = w(j-1) (j - 1 + mu) / j, not from the rising function,
// so the two routes share no evaluation code beyond the problem data.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "nabla/greens.hpp"

namespace nabla {
namespace {

std::vector<double> caputo_weights(double nu, std::size_t count) {
  const double mu = 1.0 - nu;
  std::vector<double> w(count, 0.0);
  if (count == 0) return w;
  w[0] = 1.0;
  for (std::size_t j = 1; j < count; ++j) {
    w[j] = w[j - 1] * (static_cast<double>(j) - 1.0 + mu) / static_cast<double>(j);
  }
  return w;
}

class Assembler {
 public:
  explicit Assembler(const SelfAdjointProblem& prob)
      : n_(prob.steps()),
        w_(caputo_weights(prob.nu().value(), n_ + 1)),
        sys_{n_ + 1, std::vector<double>((n_ + 1) * (n_ + 1), 0.0), std::vector<double>(n_ + 1, 0.0)} {
    for (std::size_t k = 1; k + 1 <= n_; ++k) {
      add_caputo(k, k + 1, prob.p().at_offset(k));
      add_caputo(k, k, -prob.p().at_offset(k - 1));
      coef(k, k) += prob.q().at_offset(k - 1);
      sys_.rhs[k] = prob.h().at_offset(k - 1);
    }
  }

  double& coef(std::size_t row, std::size_t col) { return sys_.matrix[row * sys_.size + col]; }

  // row += scale * (Caputo difference based at a, evaluated at a + k).
  void add_caputo(std::size_t row, std::size_t k, double scale) {
    for (std::size_t j = 1; j <= k; ++j) {
      coef(row, j) += scale * w_[k - j];
      coef(row, j - 1) -= scale * w_[k - j];
    }
  }

  std::size_t n() const { return n_; }
  DenseSystem take() { return std::move(sys_); }
  DenseSystem& system() { return sys_; }

 private:
  std::size_t n_;
  std::vector<double> w_;
  DenseSystem sys_;
};

}  // namespace

DenseSystem assemble_bvp_system(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                                const BvpOptions& opts) {
  Assembler asmb(prob);
  const std::size_t n = asmb.n();
  asmb.coef(0, 0) += bc.alpha() + bc.beta();
  asmb.coef(0, 1) -= bc.beta();
  asmb.system().rhs[0] = bc.A();

  asmb.coef(n, n) += bc.gamma();
  if (opts.caputo_boundary_at_b) {
    asmb.add_caputo(n, n, bc.delta());
  } else {
    asmb.coef(n, n) += bc.delta();
    asmb.coef(n, n - 1) -= bc.delta();
  }
  asmb.system().rhs[n] = bc.B();
  return asmb.take();
}

DenseSystem assemble_ivp_system(const SelfAdjointProblem& prob, InitialData init) {
  Assembler asmb(prob);
  const std::size_t n = asmb.n();
  asmb.coef(0, 0) = 1.0;
  asmb.system().rhs[0] = init.A;
  asmb.coef(n, 1) = 1.0;
  asmb.coef(n, 0) = -1.0;
  asmb.system().rhs[n] = init.B;
  return asmb.take();
}

std::vector<double> solve_dense(const DenseSystem& system, double pivot_tol) {
  const auto n = static_cast<Eigen::Index>(system.size);
  Eigen::MatrixXd m(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double row_norm = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = system.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      row_norm = std::max(row_norm, std::abs(m(i, j)));
    }
    if (!(row_norm > 0.0)) throw SingularSystemError("dense system has a zero row");
    m.row(i) /= row_norm;
    rhs(i) = system.rhs[static_cast<std::size_t>(i)] / row_norm;
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (pivots.minCoeff() <= pivot_tol) {
    throw SingularSystemError("dense elimination met a pivot of " + std::to_string(pivots.minCoeff()) +
                              " (tolerance " + std::to_string(pivot_tol) + ")");
  }
  const Eigen::VectorXd x = lu.solve(rhs);
  return std::vector<double>(x.data(), x.data() + x.size());
}

GridFunction dense_oracle_solve(const SelfAdjointProblem& prob, const SturmLiouvilleBC& bc,
                                const BvpOptions& opts) {
  return GridFunction(prob.solution_domain(), solve_dense(assemble_bvp_system(prob, bc, opts),
                                                           opts.singular_tol));
}

GridFunction dense_oracle_solve_ivp(const SelfAdjointProblem& prob, InitialData init,
                                    double pivot_tol) {
  return GridFunction(prob.solution_domain(), solve_dense(assemble_ivp_system(prob, init), pivot_tol));
}

}  // namespace nabla
