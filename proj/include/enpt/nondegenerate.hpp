#pragma once

#include <vector>

#include <Eigen/Dense>

#include "enpt/partitioning.hpp"

namespace enpt {

// State arguments named `n` below are labels (quantum numbers); see
// PartitionedSystem::slot.

/// Rayleigh-Schroedinger energies through fourth order.
struct EnergySeries {
  int n = 0;
  double e1 = 0.0;  // D_n + W_nn
  double e2 = 0.0;  // second-order correction (lambda^2 already included)
  double e3 = 0.0;
  double e4 = 0.0;
  /// cumulative[k-1] is the energy correct through order k (k = 1..order).
  std::vector<double> cumulative;

  double energy(int order) const { return cumulative.at(order - 1); }
};

/// RS coefficient corrections psi^(k), k = 1..order, each a full-length
/// vector with a zero in the target slot (intermediate normalisation).
/// The coefficient correct through order k is the sum of the first k.
std::vector<Eigen::VectorXd> rspt_coefficients(const PartitionedSystem& p,
                                               int n, int order);

/// order in {2, 3, 4}. Throws SmallDenominator when |D_n - D_m| falls
/// below the guard for some m != n.
EnergySeries rspt(const PartitionedSystem& p, int n, int order);

enum class BwStrategy { self_consistent, prior_order };
enum class BwEvaluator { nested_sum, matvec };

struct BwOptions {
  BwEvaluator evaluator = BwEvaluator::nested_sum;
  double tol = 1e-12;
  int max_iterations = 500;
};

struct BwResult {
  double energy = 0.0;
  int iterations = 0;      // right-hand-side evaluations at the final order
  bool bracketed = false;  // root came from the bracketing fallback
};

/// Right-hand side of the Brillouin-Wigner energy series truncated after
/// the term with `order` coupling factors, evaluated at `energy`:
///   D_n + W_nn + sum_{j=2}^{order} T_j(energy).
/// The nested-sum evaluator spends O(N^(j-1)) on T_j; the matvec evaluator
/// spends O(j N^2).
double bw_series(const PartitionedSystem& p, int n, double energy, int order,
                 BwEvaluator evaluator = BwEvaluator::nested_sum);

/// order in 2..5. Self-consistent: fixed-point iteration from D_n + W_nn,
/// damped when successive steps change sign, falling back to bracketing
/// between the neighbouring diagonal energies. Prior-order: one evaluation
/// at the energy of order-1.
BwResult bwpt(const PartitionedSystem& p, int n, int order,
              BwStrategy strategy, const BwOptions& options = {});

struct IterationTrace {
  int n = 0;
  /// energies[k-1] = E_n^(k); energies[0] = D_n + W_nn.
  std::vector<double> energies;
  /// Final c'_mn as a full-length vector; the target slot holds c'_nn = 1.
  Eigen::VectorXd coefficients;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations_used = 0;  // coefficient updates performed

  double energy(int k) const { return energies.at(k - 1); }
};

inline constexpr int kDefaultKMax = 200;
inline constexpr double kDefaultTolerance = 1e-12;

/// Alternates the coefficient update
///   c_m <- (W x)_m / (E - D_m),  x = c with x_n = 1,
/// and the energy update E <- D_n + (W x)_n, one matrix-vector product per
/// order. Stops once |E^(k+1) - E^(k)| < tol or after k_max energies.
class IterativeVariant {
 public:
  IterativeVariant(const PartitionedSystem& p, int n);
  IterativeVariant(PartitionedSystem&&, int) = delete;

  /// Latest energy E^(k).
  double energy() const { return energies_.back(); }
  const std::vector<double>& energies() const { return energies_; }
  /// Coefficients that produced the latest energy.
  const Eigen::VectorXd& state() const { return state_; }

  /// Computes E^(k+1). Throws SmallDenominator.
  double advance();

 private:
  const PartitionedSystem& p_;
  int slot_;
  double guard_;
  Eigen::VectorXd state_;
  Eigen::VectorXd product_;
  std::vector<double> energies_;
};

IterationTrace iterative_variant(const PartitionedSystem& p, int n,
                                 int k_max = kDefaultKMax,
                                 double tol = kDefaultTolerance);

/// ||(D + W - E) c||_2 with the target slot of `coefficients` forced to 1.
double residual(const PartitionedSystem& p, int n,
                const Eigen::VectorXd& coefficients, double energy);

}  // namespace enpt
