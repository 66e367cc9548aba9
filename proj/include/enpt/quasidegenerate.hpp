#pragma once

#include <vector>

#include <Eigen/Dense>

#include "enpt/partitioning.hpp"

namespace enpt {

/// Model space rotated to its correct zeroth-order states, plus the
/// couplings between those states and the complement.
///
/// All couplings carry lambda already (they are built from
/// PartitionedSystem::coupling), so no further lambda factors appear in the
/// energy expressions.
struct QdSetup {
  PartitionedSystem system;      // Epstein-Nesbet partitioned H
  std::vector<int> indices;      // model-space labels, ascending
  std::vector<int> complement;   // remaining labels, ascending
  Eigen::MatrixXd rotation;      // d x d, columns = correct zeroth-order states
  Eigen::VectorXd script_e;      // model-space eigenvalues, ascending
  Eigen::MatrixXd vbar;          // d x (N-d): rotation^T W(model, complement)
  int target = 0;                // label of the state of interest
  int n_local = 0;               // rotation column following `target`

  int dimension() const { return static_cast<int>(indices.size()); }
};

/// Diagonalises the model-space block of diag(D) + W. Each rotation column
/// is signed so its largest-magnitude entry is nonnegative. Requires the
/// Epstein-Nesbet scheme. Throws TargetAmbiguous if two columns weigh the
/// target state equally to within 1e-9.
QdSetup build_model_space(const PartitionedSystem& p,
                          const std::vector<int>& indices, int target);

/// script_e[n] + sum_l vbar(n, l)^2 / (script_e[n] - D_l).
double qd_second_order(const QdSetup& setup);

struct QdIterationTrace {
  std::vector<double> energies;  // energies[k-1] = E^(k)
  Eigen::VectorXd outer_coeffs;  // c'_ln over the complement
  Eigen::VectorXd inner_coeffs;  // cbar'_jn over the model space; slot n_local = 1
  bool converged = false;
  int iterations_used = 0;
  double residual_norm = 0.0;

  double energy(int k) const { return energies.at(k - 1); }
};

/// Iterates the coupled outer/inner coefficient updates and the energy
/// update starting from zero coefficients and E^(1) = script_e[n_local].
QdIterationTrace qd_iterate(const QdSetup& setup, int k_max, double tol);

/// {n} plus every m with |D_m - D_n| < ratio_threshold |W_nm|, ascending.
std::vector<int> select_model_space(const PartitionedSystem& p, int n,
                                    double ratio_threshold = 10.0);

/// Full-basis state vector (original slots) described by a QD trace.
Eigen::VectorXd assemble_state(const QdSetup& setup,
                               const QdIterationTrace& trace);

}  // namespace enpt
