#pragma once

#include <Eigen/Dense>

namespace enpt {

enum class SystemKind { oscillator, cosine_box };

const char* to_string(SystemKind kind);

/// Truncated-basis representation of H = H0 + lambda V in the unperturbed
/// eigenbasis, with hbar = mu = omega = L = 1.
///
/// Storage is slot-based (0 .. size()-1). States are labelled by their
/// quantum number: oscillator labels start at 0, box labels at 1.
struct ModelSystem {
  SystemKind kind = SystemKind::oscillator;
  Eigen::VectorXd e0;  // zeroth-order energies E_m^(0), strictly increasing
  Eigen::MatrixXd v;   // V_lm, real symmetric
  double lambda = 0.0;

  int size() const { return static_cast<int>(e0.size()); }
  int first_label() const { return kind == SystemKind::cosine_box ? 1 : 0; }
  int slot(int label) const { return label - first_label(); }
  int label(int slot) const { return slot + first_label(); }

  /// Full Hamiltonian matrix diag(e0) + lambda v.
  Eigen::MatrixXd hamiltonian() const;
};

inline constexpr int kDefaultOscillatorBasis = 80;
inline constexpr int kDefaultBoxBasis = 60;

/// H0 = -1/2 d^2/dx^2 + x^2/2, V = x^2/2. Requires n_basis >= 4, lambda > -1.
ModelSystem build_harmonic_oscillator(int n_basis, double lambda);

/// Infinite well on [-1/2, 1/2] with V(x) = cos(pi x). Requires n_basis >= 4.
ModelSystem build_cosine_box(int n_basis, double lambda);

/// Closed-form <m|cos(pi x)|n> for box labels m, n >= 1.
double cosine_box_element(int m, int n);

/// Closed-form <m|x^2/2|n> for oscillator labels m, n >= 0.
double oscillator_element(int m, int n);

/// Matrix element of V between labelled states, evaluated by composite
/// Gauss-Legendre quadrature of the position-space wavefunctions. Serves as
/// an oracle for the closed forms above.
double quadrature_matrix_element(SystemKind kind, int m, int n);

/// Position-space eigenfunctions of H0.
double oscillator_wavefunction(int n, double x);
double box_wavefunction(int n, double x);

}  // namespace enpt
