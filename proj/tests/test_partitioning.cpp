#include <random>

#include <gtest/gtest.h>

#include "enpt/errors.hpp"
#include "enpt/partitioning.hpp"

using namespace enpt;

TEST(Partition, OscillatorEpsteinNesbet) {
  const PartitionedSystem p =
      partition(build_harmonic_oscillator(10, 1.0), Scheme::epstein_nesbet);
  EXPECT_DOUBLE_EQ(p.diagonal(0), 0.75);
  EXPECT_DOUBLE_EQ(p.diagonal(2), 3.75);
  EXPECT_EQ(p.coupling(0, 0), 0.0);
  // E'_m = (m + 1/2)(1 + lambda/2)
  for (int m = 0; m < 10; ++m) EXPECT_NEAR(p.diagonal(m), (m + 0.5) * 1.5, 1e-15);
}

TEST(Partition, OscillatorStandard) {
  const PartitionedSystem p =
      partition(build_harmonic_oscillator(10, 1.0), Scheme::standard);
  EXPECT_DOUBLE_EQ(p.diagonal(0), 0.5);
  EXPECT_DOUBLE_EQ(p.coupling(0, 0), 0.25);
  EXPECT_DOUBLE_EQ(p.first_order_energy(0), 0.75);
}

TEST(Partition, ReconstructsHamiltonianForRandomLambda) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> lambda_dist(-0.9, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double lambda = lambda_dist(rng);
    for (const ModelSystem& sys : {build_harmonic_oscillator(30, lambda),
                                   build_cosine_box(30, lambda)}) {
      const Eigen::MatrixXd h = sys.hamiltonian();
      for (Scheme scheme : {Scheme::epstein_nesbet, Scheme::standard}) {
        const PartitionedSystem p = partition(sys, scheme);
        const Eigen::MatrixXd rebuilt = p.hamiltonian();
        for (int l = 0; l < 30; ++l) {
          for (int m = 0; m < 30; ++m) {
            EXPECT_NEAR(rebuilt(l, m), h(l, m),
                        1e-13 * std::max(1.0, std::abs(h(l, m))));
            EXPECT_EQ(p.coupling(l, m), p.coupling(m, l));
          }
          if (scheme == Scheme::epstein_nesbet) EXPECT_EQ(p.coupling(l, l), 0.0);
          if (scheme == Scheme::standard) EXPECT_EQ(p.diagonal(l), sys.e0(l));
        }
      }
    }
  }
}

TEST(Partition, SchemesCoincideAtZeroLambda) {
  for (const ModelSystem& sys :
       {build_harmonic_oscillator(12, 0.0), build_cosine_box(12, 0.0)}) {
    const PartitionedSystem en = partition(sys, Scheme::epstein_nesbet);
    const PartitionedSystem st = partition(sys, Scheme::standard);
    EXPECT_TRUE(en.coupling.isZero(0.0));
    EXPECT_TRUE(st.coupling.isZero(0.0));
    EXPECT_TRUE(en.diagonal == sys.e0);
    EXPECT_TRUE(st.diagonal == sys.e0);
  }
}

TEST(Partition, LabelsMapToSlots) {
  const PartitionedSystem box = partition(build_cosine_box(8, 1.0), Scheme::standard);
  EXPECT_EQ(box.checked_slot(1), 0);
  EXPECT_EQ(box.checked_slot(8), 7);
  EXPECT_THROW(box.checked_slot(0), InvalidArgument);
  EXPECT_THROW(box.checked_slot(9), InvalidArgument);
}
