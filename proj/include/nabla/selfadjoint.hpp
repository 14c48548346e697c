#pragma once

#include <cstddef>
#include <vector>

#include "nabla/grid.hpp"

namespace nabla {

/// The equation L_a x = h on [a + 1, b - 1] with
///   (L_a x)(t) = nabla[p(t + 1) C x(t + 1)] + q(t) x(t),
/// C the Caputo difference of order nu in (0, 1] based at a.
///
/// p lives on [a + 1, b] and must be positive; q and h live on [a + 1, b - 1].
class SelfAdjointProblem {
 public:
  SelfAdjointProblem(double a, double b, FracOrder nu, GridFunction p, GridFunction q,
                     GridFunction h);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  /// b - a.
  std::size_t steps() const noexcept { return steps_; }
  FracOrder nu() const noexcept { return nu_; }
  const GridFunction& p() const noexcept { return p_; }
  const GridFunction& q() const noexcept { return q_; }
  const GridFunction& h() const noexcept { return h_; }

  /// [a, b], where solutions live.
  Domain solution_domain() const { return Domain(a_, steps_); }
  /// [a + 1, b - 1], where the equation holds.
  Domain interior() const { return Domain(a_ + 1.0, steps_ - 2); }

  bool has_zero_potential() const noexcept;

  SelfAdjointProblem with_forcing(GridFunction h) const;
  SelfAdjointProblem homogeneous() const;

 private:
  double a_;
  double b_;
  std::size_t steps_;
  FracOrder nu_;
  GridFunction p_;
  GridFunction q_;
  GridFunction h_;
};

/// x(a) = A, nabla x(a + 1) = B.
struct InitialData {
  double A = 0.0;
  double B = 0.0;
};

/// Caputo initial value problem of arbitrary order nu > 0:
///   C x(t) = h(t) for t >= a + 1,  nabla^k x(a) = c_k for k < ceil(nu).
class CaputoIvpSpec {
 public:
  CaputoIvpSpec(double a, FracOrder nu, std::vector<double> c, GridFunction h);

  double a() const noexcept { return a_; }
  FracOrder nu() const noexcept { return nu_; }
  const std::vector<double>& c() const noexcept { return c_; }
  const GridFunction& h() const noexcept { return h_; }

 private:
  double a_;
  FracOrder nu_;
  std::vector<double> c_;
  GridFunction h_;
};

/// Square table over (t, s) in [a, b] x [a, b]. For a Cauchy function the
/// entries with t < s are zero.
class KernelTable {
 public:
  KernelTable(double a, std::size_t steps, std::vector<double> entries);

  double a() const noexcept { return a_; }
  double b() const noexcept { return a_ + static_cast<double>(steps_); }
  std::size_t steps() const noexcept { return steps_; }

  double operator()(double t, double s) const;
  double at(std::size_t kt, std::size_t ks) const noexcept { return entries_[kt * (steps_ + 1) + ks]; }
  /// Column s as a function of t on [s, b].
  GridFunction column(double s) const;

 private:
  double a_;
  std::size_t steps_;
  std::vector<double> entries_;
};

enum class Execution { sequential, parallel };

/// (L_a x)(t) for t in [a + 1, b - 1]; x must cover [a, t + 1].
double apply_L(const SelfAdjointProblem& prob, const GridFunction& x, double t);

/// L_a x on the whole interior [a + 1, b - 1].
GridFunction apply_L(const SelfAdjointProblem& prob, const GridFunction& x);

/// Solves the Caputo IVP on [a - N + 1, b] by marching the N-th backward
/// difference forward one step at a time.
GridFunction solve_caputo_ivp_stepping(const CaputoIvpSpec& spec, double b);

/// Solves the Caputo IVP on [a - N + 1, b] from the explicit representation
/// (Taylor polynomial in the c_k plus the nu-order sum of h).
GridFunction solve_caputo_ivp_closed(const CaputoIvpSpec& spec, double b);

/// Unique solution of L_a x = h with the given initial data, on [a, b].
GridFunction solve_selfadjoint_ivp(const SelfAdjointProblem& prob, InitialData init);

/// Cauchy function x(t, s): for each s in [a, b - 1], x(., s) solves the
/// homogeneous equation based at s with x(s, s) = 0 and
/// nabla x(s + 1, s) = 1 / p(s + 1). Column s = b holds only x(b, b) = 0.
KernelTable cauchy_function(const SelfAdjointProblem& prob,
                            Execution exec = Execution::sequential);

/// Solution of L_a y = h with initial data `init`, assembled as the
/// homogeneous solution plus the Cauchy-kernel convolution with h.
GridFunction variation_of_constants(const SelfAdjointProblem& prob, InitialData init);
GridFunction variation_of_constants(const SelfAdjointProblem& prob, InitialData init,
                                    const KernelTable& cauchy);

struct HomogeneousBasis {
  GridFunction x1;  // x(a) = 1, nabla x(a + 1) = 0
  GridFunction x2;  // x(a) = 0, nabla x(a + 1) = 1
};

HomogeneousBasis homogeneous_basis(const SelfAdjointProblem& prob);

}  // namespace nabla
