#pragma once

#include <optional>

#include <Eigen/Dense>

#include "enpt/model_systems.hpp"

namespace enpt {

enum class ReferenceSource { closed_form, dense_diag };

struct ReferenceSpectrum {
  Eigen::VectorXd eigenvalues;                 // ascending
  std::optional<Eigen::MatrixXd> eigenvectors;  // columns, orthonormal
  ReferenceSource source = ReferenceSource::dense_diag;
  int sweeps = 0;
};

/// sqrt(1 + lambda) (n + 1/2). Requires lambda > -1.
double exact_oscillator_energy(int n, double lambda);

/// Cyclic Jacobi diagonalisation of a real symmetric matrix.
/// Throws NonConvergence (carrying the sweep count) if the off-diagonal norm
/// does not fall below 1e-14 ||H||_F within `max_sweeps`.
ReferenceSpectrum symmetric_eigensolve(const Eigen::MatrixXd& h,
                                       bool keep_vectors = true,
                                       int max_sweeps = 100);

/// Spectrum of diag(d) + w.
ReferenceSpectrum dense_eigensolve(const Eigen::VectorXd& d,
                                   const Eigen::MatrixXd& w,
                                   bool keep_vectors = true);

/// Ground-truth energy of the labelled state. The oscillator uses the closed
/// form; the box is diagonalised in a basis twice the size of `sys`.
double reference_energy(const ModelSystem& sys, int n);

/// Lowest `count` box levels at basis size `n_basis`, ascending.
Eigen::VectorXd box_levels(int n_basis, double lambda, int count);

}  // namespace enpt
