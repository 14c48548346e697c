#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>

#include "nabla/errors.hpp"
#include "nabla/frac_calculus.hpp"
#include "nabla/greens.hpp"
#include "nabla/selfadjoint.hpp"
#include "nabla/tolerance.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"
#include "support/problems.hpp"

namespace nabla {
namespace {

using testing::constant_problem;
using testing::random_problem;

GridFunction ramp_response(std::size_t steps) {
  return GridFunction::tabulate(Domain(0.0, steps), [](double t) {
    return oracle::rising(t - 1.0, 2.6) / std::tgamma(3.6);
  });
}

SelfAdjointProblem ramp_problem(std::size_t steps) {
  return constant_problem(0.0, steps, 0.6).with_forcing(
      GridFunction::tabulate(Domain(1.0, steps - 2), [](double t) { return t; }));
}

double max_norm(const GridFunction& f) { return check::max_abs(f.values()); }

TEST(SelfAdjointProblem, Validation) {
  const Domain edge(1.0, 3), inner(1.0, 2);
  const auto one = GridFunction::constant(edge, 1.0);
  const auto zero = GridFunction::constant(inner, 0.0);
  EXPECT_NO_THROW(SelfAdjointProblem(0.0, 4.0, FracOrder(0.5), one, zero, zero));
  EXPECT_THROW(SelfAdjointProblem(0.0, 4.0, FracOrder(1.5), one, zero, zero), InvalidArgument);
  EXPECT_THROW(SelfAdjointProblem(0.0, 4.0, FracOrder(0.5), GridFunction::constant(edge, -1.0), zero, zero),
               InvalidArgument);
  EXPECT_THROW(SelfAdjointProblem(0.0, 4.0, FracOrder(0.5), GridFunction::constant(inner, 1.0), zero, zero),
               InvalidArgument);
  EXPECT_THROW(SelfAdjointProblem(0.0, 1.0, FracOrder(0.5), GridFunction::constant(Domain(1.0, 0), 1.0),
                                  zero, zero),
               InvalidArgument);
  EXPECT_THROW(CaputoIvpSpec(0.0, FracOrder(1.5), {1.0}, GridFunction::constant(edge, 0.0)), InvalidArgument);
}

TEST(ApplyL, Examples) {
  const auto prob = constant_problem(0.0, 10, 0.4);
  const auto lc = apply_L(prob, GridFunction::constant(prob.solution_domain(), 3.0));
  for (double v : lc.values()) EXPECT_EQ(v, 0.0);

  const auto ex = ramp_problem(40);
  const auto lx = apply_L(ex, ramp_response(40));
  for (double t = 1.0; t <= 39.0; t += 1.0) EXPECT_TRUE(approx_equal(lx(t), t)) << t;
}

TEST(ApplyL, MatchesDenseAssemblerRows) {
  oracle::Gen gen(41);
  for (int i = 0; i < 50; ++i) {
    const auto prob = random_problem(gen);
    const auto x = gen.function(prob.solution_domain());
    const auto sys = assemble_bvp_system(prob, SturmLiouvilleBC::dirichlet());
    const auto lx = apply_L(prob, x);
    for (std::size_t k = 1; k + 1 <= prob.steps(); ++k) {
      double row = 0.0;
      for (std::size_t j = 0; j < sys.size; ++j) row += sys.at(k, j) * x.at_offset(j);
      EXPECT_NEAR(lx.at_offset(k - 1), row, 1e-10 * std::max(1.0, std::abs(row)));
    }
  }
}

TEST(CaputoIvp, ZeroForcingIsPolynomial) {
  const CaputoIvpSpec c0(0.0, FracOrder(0.6), {1.25}, GridFunction::constant(Domain(1.0, 9), 0.0));
  const auto result = solve_caputo_ivp_stepping(c0, 10.0);
  for (double v : result.values()) EXPECT_EQ(v, 1.25);
  const CaputoIvpSpec c2(0.0, FracOrder(1.5), {1.0, 2.0}, GridFunction::constant(Domain(1.0, 9), 0.0));
  const auto x = solve_caputo_ivp_closed(c2, 10.0);
  EXPECT_EQ(x.domain(), Domain(-1.0, 11));
  for (double t = -1.0; t <= 10.0; t += 1.0) EXPECT_NEAR(x(t), 1.0 + 2.0 * t, 1e-13);
}

TEST(CaputoIvp, RampForcing) {
  const CaputoIvpSpec spec(0.0, FracOrder(0.7), {2.0},
                           GridFunction::tabulate(Domain(1.0, 39), [](double t) { return t; }));
  const auto step = solve_caputo_ivp_stepping(spec, 40.0);
  const auto closed = solve_caputo_ivp_closed(spec, 40.0);
  EXPECT_EQ(closed(0.0), 2.0);
  EXPECT_NEAR(closed(1.0), 3.0, 1e-14);
  for (double t = 0.0; t <= 40.0; t += 1.0) {
    const double want = oracle::rising(t, 1.7) / std::tgamma(2.7) + 2.0;
    EXPECT_TRUE(approx_equal(step(t), want)) << t;
    EXPECT_TRUE(approx_equal(closed(t), want)) << t;
  }
}

TEST(CaputoIvp, UnitForcingClosedForm) {
  const CaputoIvpSpec spec(0.0, FracOrder(0.5), {0.0}, GridFunction::constant(Domain(1.0, 19), 1.0));
  const auto x = solve_caputo_ivp_closed(spec, 20.0);
  for (double t = 0.0; t <= 20.0; t += 1.0) {
    EXPECT_TRUE(approx_equal(x(t), oracle::rising(t, 0.5) / std::tgamma(1.5))) << t;
  }
}

TEST(CaputoIvp, SteppingAgreesWithClosedForm) {
  oracle::Gen gen(42);
  for (int i = 0; i < 120; ++i) {
    const double nu = i < 100 ? 0.1 * (i % 10 + 1) : gen.uniform(1.05, 3.0);
    const FracOrder order(nu);
    const double a = gen.base();
    const auto len = static_cast<std::size_t>(gen.integer(1, 64));
    const auto h = gen.function(Domain(a + 1.0, len - 1));
    const auto c = gen.values(static_cast<std::size_t>(order.ceiling()), -2.0, 2.0);
    const CaputoIvpSpec spec(a, order, c, h);
    const double b = a + static_cast<double>(len);
    const auto x = solve_caputo_ivp_stepping(spec, b);
    const auto y = solve_caputo_ivp_closed(spec, b);
    ASSERT_EQ(x.domain(), y.domain());
    const double scale = max_norm(y);
    for (std::size_t k = 0; k < x.domain().size(); ++k) {
      EXPECT_TRUE(check::close(x.at_offset(k), y.at_offset(k), 1e-9, scale)) << nu << ' ' << k;
    }
    // The stepping solution satisfies the equation and initial data.
    for (int k = 0; k < order.ceiling(); ++k) {
      EXPECT_NEAR(nabla_power(x, k, a), c[static_cast<std::size_t>(k)], 1e-9 * std::max(1.0, scale));
    }
    for (double t = a + 1.0; t <= b + 0.5; t += 1.0) {
      EXPECT_NEAR(caputo_diff(x, order, a, t), h(t), 1e-9 * std::max(1.0, scale));
    }
  }
}

TEST(SelfAdjointIvp, ConstantSolution) {
  const auto prob = constant_problem(0.5, 12, 0.3);
  const auto result = solve_selfadjoint_ivp(prob, {1.75, 0.0});
  for (double v : result.values()) EXPECT_EQ(v, 1.75);
}

TEST(SelfAdjointIvp, RampForcing) {
  const auto x = solve_selfadjoint_ivp(ramp_problem(40), {0.0, 0.0});
  const auto want = ramp_response(40);
  for (double t = 0.0; t <= 40.0; t += 1.0) EXPECT_TRUE(approx_equal(x(t), want(t))) << t;
}

TEST(SelfAdjointIvp, ResidualAndInitialData) {
  oracle::Gen gen(43);
  for (int i = 0; i < 100; ++i) {
    const auto prob = random_problem(gen);
    const InitialData init{gen.uniform(-2.0, 2.0), gen.uniform(-2.0, 2.0)};
    const auto x = solve_selfadjoint_ivp(prob, init);
    const double scale = std::max(1.0, max_norm(x));
    EXPECT_EQ(x(prob.a()), init.A);
    EXPECT_NEAR(x(prob.a() + 1.0) - x(prob.a()), init.B, 1e-14 * scale);
    const auto lx = apply_L(prob, x);
    for (std::size_t k = 0; k < lx.domain().size(); ++k) {
      EXPECT_TRUE(check::close(lx.at_offset(k), prob.h().at_offset(k), 1e-9, scale));
    }
    const auto dense = dense_oracle_solve_ivp(prob, init);
    for (std::size_t k = 0; k < x.domain().size(); ++k) {
      EXPECT_TRUE(check::close(x.at_offset(k), dense.at_offset(k), 1e-9, scale));
    }
  }
}

TEST(Cauchy, UnitCoefficientClosedForm) {
  for (int i = 1; i <= 10; ++i) {
    const double nu = 0.1 * i;
    const auto prob = constant_problem(-1.5, 20, nu);
    const auto x = cauchy_function(prob);
    for (double s = -1.5; s <= 18.5; s += 1.0) {
      for (double t = s; t <= 18.5; t += 1.0) {
        const double want = nu == 1.0 ? t - s : oracle::rising(t - s, nu) / std::tgamma(nu + 1.0);
        EXPECT_TRUE(approx_equal(x(t, s), want, 1e-10)) << nu << ' ' << t << ' ' << s;
      }
      for (double t = -1.5; t < s; t += 1.0) EXPECT_EQ(x(t, s), 0.0);
    }
  }
}

TEST(Cauchy, ZeroPotentialIsSumOfReciprocalP) {
  oracle::Gen gen(44);
  for (int i = 0; i < 30; ++i) {
    const auto prob = random_problem(gen, {.q_abs = 0.0});
    const auto x = cauchy_function(prob);
    const double nu = prob.nu().value();
    for (std::size_t ks = 0; ks < prob.steps(); ++ks) {
      for (std::size_t kt = ks; kt <= prob.steps(); ++kt) {
        double want = 0.0;
        for (std::size_t kr = ks + 1; kr <= kt; ++kr) {
          want += oracle::kernel(nu, static_cast<std::int64_t>(kt - kr)) / prob.p().at_offset(kr - 1);
        }
        EXPECT_TRUE(approx_equal(x.at(kt, ks), want, 1e-10)) << kt << ' ' << ks;
      }
    }
  }
}

TEST(Cauchy, InitialConditionsAndFirstStep) {
  oracle::Gen gen(45);
  for (int i = 0; i < 30; ++i) {
    const auto prob = random_problem(gen);
    const auto x = cauchy_function(prob);
    const double a = prob.a();
    for (std::size_t ks = 0; ks < prob.steps(); ++ks) {
      const double s = a + static_cast<double>(ks);
      EXPECT_EQ(x.at(ks, ks), 0.0);
      EXPECT_EQ(x.at(ks + 1, ks), 1.0 / prob.p()(s + 1.0));
      const auto col = x.column(s);
      EXPECT_EQ(col.domain(), Domain(s, prob.steps() - ks));
      EXPECT_NEAR(caputo_diff(col, prob.nu(), s, s + 1.0), col(s + 1.0) - col(s), 1e-15);
    }
    EXPECT_EQ(x.at(prob.steps(), prob.steps()), 0.0);
  }
}

TEST(Cauchy, ColumnsSolveShiftedHomogeneousEquation) {
  oracle::Gen gen(46);
  for (int i = 0; i < 20; ++i) {
    const auto prob = random_problem(gen, {.min_steps = 4});
    const auto x = cauchy_function(prob);
    for (std::size_t ks = 0; ks + 2 <= prob.steps(); ++ks) {
      const double s = prob.a() + static_cast<double>(ks);
      const auto col = x.column(s);
      const auto shifted = SelfAdjointProblem(s, prob.b(), prob.nu(), prob.p().restrict_to(s + 1.0, prob.b()),
                                              prob.q().restrict_to(s + 1.0, prob.b() - 1.0),
                                              GridFunction::constant(Domain(s + 1.0, prob.steps() - ks - 2), 0.0));
      const double scale = std::max(1.0, max_norm(col));
      const auto result = apply_L(shifted, col);
      for (double v : result.values()) EXPECT_NEAR(v, 0.0, 1e-10 * scale);
    }
  }
}

TEST(Cauchy, ParallelIsBitIdentical) {
  oracle::Gen gen(47);
  for (int i = 0; i < 10; ++i) {
    const auto prob = random_problem(gen, {.min_steps = 20, .max_steps = 60});
    const auto seq = cauchy_function(prob, Execution::sequential);
    const auto par = cauchy_function(prob, Execution::parallel);
    for (std::size_t kt = 0; kt <= prob.steps(); ++kt) {
      for (std::size_t ks = 0; ks <= prob.steps(); ++ks) {
        ASSERT_EQ(std::bit_cast<std::uint64_t>(seq.at(kt, ks)), std::bit_cast<std::uint64_t>(par.at(kt, ks)));
      }
    }
  }
}

TEST(VariationOfConstants, ZeroForcingGivesHomogeneousSolution) {
  oracle::Gen gen(48);
  const auto prob = random_problem(gen).homogeneous();
  const InitialData init{0.5, -1.0};
  const auto y = variation_of_constants(prob, init);
  const auto x = solve_selfadjoint_ivp(prob, init);
  for (std::size_t k = 0; k < x.domain().size(); ++k) EXPECT_EQ(y.at_offset(k), x.at_offset(k));
}

TEST(VariationOfConstants, RampForcingMatchesStepping) {
  const auto prob = ramp_problem(40);
  const auto y = variation_of_constants(prob, {0.0, 0.0});
  const auto x = solve_selfadjoint_ivp(prob, {0.0, 0.0});
  for (std::size_t k = 0; k < x.domain().size(); ++k) {
    EXPECT_TRUE(approx_equal(y.at_offset(k), x.at_offset(k))) << k;
  }
}

TEST(VariationOfConstants, ResidualAndSuperposition) {
  oracle::Gen gen(49);
  for (int i = 0; i < 60; ++i) {
    const auto prob = random_problem(gen);
    const auto cauchy = cauchy_function(prob);
    const auto y0 = variation_of_constants(prob, {0.0, 0.0}, cauchy);
    const double scale = std::max(1.0, max_norm(y0));
    EXPECT_EQ(y0(prob.a()), 0.0);
    EXPECT_NEAR(y0(prob.a() + 1.0), 0.0, 1e-14 * scale);
    const auto ly = apply_L(prob, y0);
    for (std::size_t k = 0; k < ly.domain().size(); ++k) {
      EXPECT_TRUE(check::close(ly.at_offset(k), prob.h().at_offset(k), 1e-9, scale));
    }

    const InitialData init{gen.uniform(-2.0, 2.0), gen.uniform(-2.0, 2.0)};
    const auto y = variation_of_constants(prob, init, cauchy);
    const auto hom = solve_selfadjoint_ivp(prob.homogeneous(), init);
    for (std::size_t k = 0; k < y.domain().size(); ++k) {
      EXPECT_TRUE(check::close(y.at_offset(k) - y0.at_offset(k), hom.at_offset(k), 1e-9,
                               std::max(scale, max_norm(y))));
    }
  }
}

TEST(HomogeneousBasis, UnitCoefficientClosedForm) {
  const auto prob = constant_problem(2.0, 15, 0.45);
  const auto basis = homogeneous_basis(prob);
  for (double t = 2.0; t <= 17.0; t += 1.0) {
    EXPECT_EQ(basis.x1(t), 1.0);
    EXPECT_TRUE(approx_equal(basis.x2(t), oracle::rising(t - 2.0, 0.45) / std::tgamma(1.45)));
  }
}

TEST(HomogeneousBasis, CanonicalInitialData) {
  oracle::Gen gen(50);
  for (int i = 0; i < 30; ++i) {
    const auto prob = random_problem(gen);
    const auto [x1, x2] = homogeneous_basis(prob);
    const double a = prob.a();
    EXPECT_EQ(x1(a), 1.0);
    EXPECT_EQ(x1(a + 1.0) - x1(a), 0.0);
    EXPECT_EQ(x2(a), 0.0);
    EXPECT_EQ(x2(a + 1.0) - x2(a), 1.0);
    const double c1 = gen.uniform(-2.0, 2.0), c2 = gen.uniform(-2.0, 2.0);
    const auto combo = GridFunction::tabulate(prob.solution_domain(), [&](double t) { return c1 * x1(t) + c2 * x2(t); });
    EXPECT_NEAR(combo(a), c1, 1e-15);
    EXPECT_NEAR(combo(a + 1.0) - combo(a), c2, 1e-14);
  }
}

}  // namespace
}  // namespace nabla
