#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "enpt/errors.hpp"
#include "enpt/nondegenerate.hpp"
#include "enpt/reference.hpp"
#include "oracles.hpp"

using namespace enpt;

namespace {

PartitionedSystem oscillator(double lambda, Scheme scheme = Scheme::epstein_nesbet,
                             int n_basis = 80) {
  return partition(build_harmonic_oscillator(n_basis, lambda), scheme);
}

PartitionedSystem box(double lambda, Scheme scheme = Scheme::epstein_nesbet,
                      int n_basis = 60) {
  return partition(build_cosine_box(n_basis, lambda), scheme);
}

// 1/2 + lambda/4 - lambda^2 / (8 (2 + lambda)): only state 2 couples to 0.
double oscillator_rs2(double lambda) {
  return 0.5 + lambda / 4.0 - lambda * lambda / (8.0 * (2.0 + lambda));
}

// Degenerate diagonal pair to exercise the small-denominator guard.
PartitionedSystem degenerate_pair() {
  PartitionedSystem p;
  p.diagonal = Eigen::Vector3d(1.0, 1.0, 3.0);
  p.coupling = Eigen::Matrix3d::Zero();
  p.coupling(0, 1) = p.coupling(1, 0) = 0.1;
  p.coupling(0, 2) = p.coupling(2, 0) = 0.2;
  return p;
}

}  // namespace

// ---------------------------------------------------------------- RSPT

TEST(Rspt, OscillatorSecondOrder) {
  const EnergySeries s = rspt(oscillator(1.0), 0, 2);
  EXPECT_NEAR(s.energy(2), 0.70833333, 1e-8);
  EXPECT_NEAR(s.energy(2), oscillator_rs2(1.0), 1e-15);
  EXPECT_DOUBLE_EQ(s.e1, 0.75);
}

TEST(Rspt, OscillatorThirdOrderVanishes) {
  const PartitionedSystem p = oscillator(1.0);
  EXPECT_NEAR(oracle::rs_literal(p, 0).e3, 0.0, 1e-15);
  EXPECT_NEAR(rspt(p, 0, 3).e3, 0.0, 1e-15);
}

TEST(Rspt, MatchesLiteralSumsUnderEpsteinNesbet) {
  for (const PartitionedSystem& p : {oscillator(0.8, Scheme::epstein_nesbet, 30),
                                     box(7.0, Scheme::epstein_nesbet, 30)}) {
    for (int slot : {0, 1, 3}) {
      const oracle::RsLiteral lit = oracle::rs_literal(p, slot);
      const EnergySeries s = rspt(p, p.label(slot), 4);
      EXPECT_NEAR(s.e2, lit.e2, 1e-13 * (1.0 + std::abs(lit.e2)));
      EXPECT_NEAR(s.e3, lit.e3, 1e-13 * (1.0 + std::abs(lit.e3)));
      EXPECT_NEAR(s.e4, lit.e4, 1e-13 * (1.0 + std::abs(lit.e4)));
      EXPECT_EQ(s.cumulative.size(), 4u);
      EXPECT_NEAR(s.cumulative[3] - s.cumulative[2], s.e4, 1e-14);
    }
  }
}

TEST(Rspt, MatchesTextbookFormulasUnderStandardPartition) {
  for (const PartitionedSystem& p :
       {oscillator(0.6, Scheme::standard, 30), box(4.0, Scheme::standard, 30)}) {
    const oracle::RsLiteral lit = oracle::rs_textbook(p, 0);
    const EnergySeries s = rspt(p, p.label(0), 4);
    EXPECT_DOUBLE_EQ(s.e1, p.diagonal(0) + p.coupling(0, 0));
    EXPECT_NEAR(s.e2, lit.e2, 1e-13 * (1.0 + std::abs(lit.e2)));
    EXPECT_NEAR(s.e3, lit.e3, 1e-13 * (1.0 + std::abs(lit.e3)));
    EXPECT_NEAR(s.e4, lit.e4, 1e-13 * (1.0 + std::abs(lit.e4)));
  }
}

TEST(Rspt, StandardSecondOrderClosedForm) {
  // 1/2 + lambda/4 - lambda^2/16 at lambda = 2
  EXPECT_NEAR(rspt(oscillator(2.0, Scheme::standard), 0, 2).energy(2), 0.75, 1e-15);
}

TEST(Rspt, CoefficientsFollowTheClosedExpressions) {
  const PartitionedSystem p = box(5.0, Scheme::epstein_nesbet, 20);
  const int s = 0;
  const auto c = rspt_coefficients(p, 1, 3);
  ASSERT_EQ(c.size(), 3u);
  const auto& W = p.coupling;
  const auto& D = p.diagonal;
  const double e2 = oracle::rs_literal(p, s).e2;
  for (int m = 1; m < p.size(); ++m) {
    const double dm = D(s) - D(m);
    double second = 0.0, third = 0.0;
    for (int m1 = 1; m1 < p.size(); ++m1) {
      const double dm1 = D(s) - D(m1);
      second += W(m, m1) * W(m1, s) / (dm * dm1);
      for (int m2 = 1; m2 < p.size(); ++m2) {
        third += W(m, m1) * W(m1, m2) * W(m2, s) / (dm * dm1 * (D(s) - D(m2)));
      }
    }
    third -= e2 * W(m, s) / (dm * dm);
    EXPECT_NEAR(c[0](m), W(m, s) / dm, 1e-14);
    EXPECT_NEAR(c[1](m), second, 1e-14);
    EXPECT_NEAR(c[2](m), third, 1e-13);
  }
  EXPECT_EQ(c[0](s), 0.0);
}

TEST(Rspt, ZeroLambdaGivesUnperturbedEnergy) {
  for (Scheme scheme : {Scheme::epstein_nesbet, Scheme::standard}) {
    for (int n = 0; n <= 5; ++n) {
      EXPECT_EQ(rspt(oscillator(0.0, scheme), n, 4).energy(4), n + 0.5);
      const PartitionedSystem b = box(0.0, scheme);
      EXPECT_EQ(rspt(b, n + 1, 4).energy(4), b.diagonal(n));
    }
  }
}

TEST(Rspt, Errors) {
  EXPECT_THROW(rspt(oscillator(1.0), 0, 1), InvalidArgument);
  EXPECT_THROW(rspt(oscillator(1.0), 0, 5), InvalidArgument);
  EXPECT_THROW(rspt(oscillator(1.0), 80, 2), InvalidArgument);
  try {
    rspt(degenerate_pair(), 0, 2);
    FAIL() << "expected SmallDenominator";
  } catch (const SmallDenominator& e) {
    EXPECT_EQ(e.target(), 0);
    EXPECT_EQ(e.other(), 1);
  }
}

// ---------------------------------------------------------------- BWPT

TEST(Bwpt, SelfConsistentSecondOrderSolvesQuadratic) {
  // E = 0.75 + 0.125 / (E - 3.75), root continuous with lambda -> 0.
  const double expected = 2.25 - std::sqrt(2.375);
  const BwResult r = bwpt(oscillator(1.0), 0, 2, BwStrategy::self_consistent);
  EXPECT_NEAR(r.energy, 0.7088965, 1e-7);
  EXPECT_NEAR(r.energy, expected, 1e-12);
  EXPECT_FALSE(r.bracketed);
}

TEST(Bwpt, PriorOrderSecondOrderIsOneEvaluation) {
  // 0.75 + 0.125 / (0.75 - 3.75): evaluating at E'_0 reproduces RS2.
  const BwResult r = bwpt(oscillator(1.0), 0, 2, BwStrategy::prior_order);
  EXPECT_NEAR(r.energy, 0.75 + 0.125 / (0.75 - 3.75), 1e-15);
  EXPECT_NEAR(r.energy, 0.70833333, 1e-8);
}

TEST(Bwpt, ZeroLambdaGivesUnperturbedEnergy) {
  for (auto strategy : {BwStrategy::self_consistent, BwStrategy::prior_order}) {
    for (int order = 2; order <= 5; ++order) {
      EXPECT_EQ(bwpt(oscillator(0.0, Scheme::epstein_nesbet, 12), 3, order, strategy).energy, 3.5);
      EXPECT_EQ(bwpt(box(0.0, Scheme::standard, 12), 2, order, strategy).energy,
                0.5 * 4.0 * M_PI * M_PI);
    }
  }
}

TEST(Bwpt, EvaluatorsAgreeWithEnumeration) {
  for (const PartitionedSystem& p :
       {box(6.0, Scheme::epstein_nesbet, 14), box(6.0, Scheme::standard, 14)}) {
    const double e = p.diagonal(0) - 0.3;
    double expected = p.first_order_energy(0);
    for (int order = 2; order <= 5; ++order) {
      expected += oracle::path_sum(p.coupling, p.diagonal, 0, e, order);
      const double nested = bw_series(p, 1, e, order, BwEvaluator::nested_sum);
      const double matvec = bw_series(p, 1, e, order, BwEvaluator::matvec);
      EXPECT_NEAR(nested, expected, 1e-12 * std::abs(expected));
      EXPECT_NEAR(matvec, expected, 1e-12 * std::abs(expected));
    }
  }
}

TEST(Bwpt, BracketingFallbackFindsTheSameRoot) {
  const PartitionedSystem p = box(8.0, Scheme::epstein_nesbet, 30);
  for (int order = 2; order <= 4; ++order) {
    const BwResult fixed = bwpt(p, 1, order, BwStrategy::self_consistent);
    BwOptions no_fixed_point;
    no_fixed_point.max_iterations = 0;
    no_fixed_point.evaluator = BwEvaluator::matvec;
    const BwResult bracket = bwpt(p, 1, order, BwStrategy::self_consistent, no_fixed_point);
    EXPECT_TRUE(bracket.bracketed);
    EXPECT_NEAR(bracket.energy, fixed.energy, 1e-10);
    EXPECT_NEAR(bracket.energy, bw_series(p, 1, bracket.energy, order), 1e-10);
  }
}

TEST(Bwpt, ReportsNonConvergenceWhenNoRootIsBracketed) {
  // Two states, standard scheme: E - a^2/(E-1) - a^2 b/(E-1)^2 stays
  // negative on (-inf, 1) for a = 0.5, b = 4.
  PartitionedSystem p;
  p.scheme = Scheme::standard;
  p.diagonal = Eigen::Vector2d(0.0, 1.0);
  p.coupling = Eigen::Matrix2d::Zero();
  p.coupling(0, 1) = p.coupling(1, 0) = 0.5;
  p.coupling(1, 1) = 4.0;
  BwOptions options;
  options.max_iterations = 0;
  EXPECT_THROW(bwpt(p, 0, 3, BwStrategy::self_consistent, options), NonConvergence);
}

TEST(Bwpt, Errors) {
  EXPECT_THROW(bwpt(oscillator(1.0), 0, 1, BwStrategy::prior_order), InvalidArgument);
  EXPECT_THROW(bwpt(oscillator(1.0), 0, 6, BwStrategy::prior_order), InvalidArgument);
  EXPECT_THROW(bw_series(degenerate_pair(), 0, 1.0, 2), SmallDenominator);
}

// ------------------------------------------------------ iterative variant

TEST(Iterative, SecondIterateIsRs2) {
  const PartitionedSystem p = oscillator(1.0);
  const IterationTrace t = iterative_variant(p, 0, 2, 0.0);
  ASSERT_EQ(t.energies.size(), 2u);
  EXPECT_DOUBLE_EQ(t.energy(1), 0.75);
  EXPECT_NEAR(t.energy(2), 0.70833333, 1e-8);
  EXPECT_NEAR(t.energy(2), rspt(p, 0, 2).energy(2), 1e-13);
}

TEST(Iterative, FirstCoefficientsAreFirstOrder) {
  const PartitionedSystem p = box(3.0);
  IterativeVariant solver(p, 1);
  solver.advance();
  for (int m = 1; m < p.size(); ++m) {
    EXPECT_NEAR(solver.state()(m),
                p.coupling(m, 0) / (p.diagonal(0) - p.diagonal(m)), 1e-15);
  }
}

TEST(Iterative, Rs2ConsistencyAcrossSystems) {
  for (double lambda : {-0.5, 0.3, 2.0, 9.0}) {
    for (const PartitionedSystem& p : {oscillator(lambda), box(lambda)}) {
      for (int slot = 0; slot < 4; ++slot) {
        const int n = p.label(slot);
        EXPECT_NEAR(iterative_variant(p, n, 2, 0.0).energy(2),
                    rspt(p, n, 2).energy(2), 1e-13 * std::abs(p.diagonal(slot)) + 1e-13);
      }
    }
  }
}

TEST(Iterative, ConvergesToLowestEigenvalue) {
  const PartitionedSystem p = oscillator(1.0);
  const IterationTrace t = iterative_variant(p, 0, 100, 1e-12);
  EXPECT_TRUE(t.converged);
  const double lowest = oracle::eigenvalues(p.hamiltonian())(0);
  EXPECT_NEAR(t.energies.back(), lowest, 1e-10);
  EXPECT_LT(t.residual_norm, 1e-8);
  EXPECT_LT(std::abs(t.energies.back() - t.energies[t.energies.size() - 2]), 1e-12);
}

TEST(Iterative, ZeroLambdaConvergesImmediately) {
  const IterationTrace t = iterative_variant(oscillator(0.0), 2, 50, 1e-12);
  EXPECT_TRUE(t.converged);
  EXPECT_EQ(t.iterations_used, 1);
  for (double e : t.energies) EXPECT_EQ(e, 2.5);
  EXPECT_EQ(t.residual_norm, 0.0);
}

TEST(Iterative, StandardSchemeStartsFromFirstOrderEnergy) {
  const PartitionedSystem p = oscillator(0.4, Scheme::standard);
  const IterationTrace t = iterative_variant(p, 0, 5, 0.0);
  EXPECT_DOUBLE_EQ(t.energy(1), 0.5 + 0.4 * 0.25);
  const BwResult bw = bwpt(p, 0, 3, BwStrategy::self_consistent);
  EXPECT_TRUE(std::isfinite(bw.energy));
  EXPECT_TRUE(std::isfinite(rspt(p, 0, 4).energy(4)));
}

TEST(Iterative, FixedPointIsAnEigenpair) {
  for (const PartitionedSystem& p : {box(10.0), box(-5.0), oscillator(5.0)}) {
    const IterationTrace t = iterative_variant(p, p.first_label(), 200, 1e-12);
    ASSERT_LT(t.residual_norm, 1e-8);
    const Eigen::VectorXd ev = oracle::eigenvalues(p.hamiltonian());
    const double nearest = (ev.array() - t.energies.back()).abs().minCoeff();
    EXPECT_LT(nearest, 1e-8);
  }
}

TEST(Iterative, NonConvergenceIsReportedNotThrown) {
  const IterationTrace t = iterative_variant(oscillator(1.0), 0, 3, 1e-14);
  EXPECT_FALSE(t.converged);
  EXPECT_EQ(t.energies.size(), 3u);
  EXPECT_THROW(iterative_variant(oscillator(1.0), 0, 0, 1e-12), InvalidArgument);
}

TEST(Iterative, SmallDenominatorIsThrown) {
  EXPECT_THROW(iterative_variant(degenerate_pair(), 0, 10, 1e-12), SmallDenominator);
}

// ---------------------------------------------------------------- residual

TEST(Residual, VanishesOnExactEigenpair) {
  const PartitionedSystem p = box(12.0, Scheme::epstein_nesbet, 40);
  const ReferenceSpectrum spec = dense_eigensolve(p.diagonal, p.coupling);
  Eigen::VectorXd v = spec.eigenvectors->col(0);
  v /= v(0);
  EXPECT_LT(residual(p, 1, v, spec.eigenvalues(0)), 1e-10);
}

TEST(Residual, VanishesAtZeroLambda) {
  const PartitionedSystem p = oscillator(0.0);
  EXPECT_EQ(residual(p, 3, Eigen::VectorXd::Unit(p.size(), 3), 3.5), 0.0);
}

TEST(Residual, FirstOrderCoefficientsLeaveSecondOrderResidual) {
  auto first_order_residual = [](double lambda) {
    const PartitionedSystem p = box(lambda);
    IterativeVariant solver(p, 1);
    solver.advance();
    return residual(p, 1, solver.state(), solver.energy());
  };
  const double ratio = first_order_residual(0.02) / first_order_residual(0.01);
  EXPECT_GT(ratio, 2.0);
  EXPECT_LT(ratio, 8.0);
}

// ------------------------------------------------------ order consistency

namespace {

double oscillator_error(double lambda, int k, int method) {
  const PartitionedSystem p = oscillator(lambda);
  double e = 0.0;
  switch (method) {
    case 0: e = iterative_variant(p, 0, k, 0.0).energy(k); break;
    case 1: e = rspt(p, 0, k).energy(k); break;
    case 2: e = bwpt(p, 0, k, BwStrategy::self_consistent).energy; break;
    case 3: e = bwpt(p, 0, k, BwStrategy::prior_order).energy; break;
  }
  return std::abs(e - exact_oscillator_energy(0, lambda));
}

}  // namespace

TEST(OrderConsistency, ErrorScalesAsNextPower) {
  const char* names[] = {"iterative", "rspt", "bwpt_sc", "bwpt_prior"};
  for (int method = 0; method < 4; ++method) {
    for (int k = 2; k <= 4; ++k) {
      const double ratio =
          oscillator_error(0.2, k, method) / oscillator_error(0.1, k, method);
      EXPECT_GE(ratio, std::pow(2.0, k)) << names[method] << " k=" << k;
      EXPECT_LE(ratio, std::pow(2.0, k + 2)) << names[method] << " k=" << k;
    }
  }
}

TEST(OddEven, OddIteratesAreSlightlyWorse) {
  const IterationTrace t = iterative_variant(oscillator(1.0), 0, 6, 0.0);
  auto err = [&](int k) { return std::abs(t.energy(k) - std::sqrt(2.0) / 2.0); };
  EXPECT_GE(err(3), err(2));
  EXPECT_LE(err(3), err(1));
  EXPECT_GE(err(5), err(4));
  EXPECT_LE(err(5), err(3));
}
