#include "enpt/model_systems.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "enpt/errors.hpp"
#include "enpt/quadrature.hpp"

namespace enpt {

namespace {

constexpr double kPi = std::numbers::pi;

// Oscillator wavefunctions decay like exp(-x^2/2); at |x| = 12 the tail of
// any integrand with n <= 12 is far below double precision.
constexpr double kOscillatorHalfWidth = 12.0;

void require_basis(int n_basis) {
  if (n_basis < 4) {
    throw InvalidArgument("n_basis must be at least 4, got " +
                          std::to_string(n_basis));
  }
}

// \int_0^1 sin(pi u) cos(k pi u) du
double sine_cosine_overlap(int k) {
  if (k % 2 != 0) return 0.0;
  const double kk = static_cast<double>(k);
  return 2.0 / (kPi * (1.0 - kk * kk));
}

}  // namespace

const char* to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::oscillator:
      return "oscillator";
    case SystemKind::cosine_box:
      return "box";
  }
  return "?";
}

Eigen::MatrixXd ModelSystem::hamiltonian() const {
  Eigen::MatrixXd h = lambda * v;
  h.diagonal() += e0;
  return h;
}

double oscillator_element(int m, int n) {
  if (m > n) std::swap(m, n);
  if (m == n) return (2.0 * m + 1.0) / 4.0;
  if (n == m + 2) return std::sqrt((m + 1.0) * (m + 2.0)) / 4.0;
  return 0.0;
}

double cosine_box_element(int m, int n) {
  // With u = x + 1/2, cos(pi x) = sin(pi u) and
  // 2 sin(m pi u) sin(n pi u) = cos((m-n) pi u) - cos((m+n) pi u).
  if ((m + n) % 2 != 0) return 0.0;
  return sine_cosine_overlap(m - n) - sine_cosine_overlap(m + n);
}

ModelSystem build_harmonic_oscillator(int n_basis, double lambda) {
  require_basis(n_basis);
  if (!(lambda > -1.0)) {
    throw InvalidArgument("oscillator requires lambda > -1, got " +
                          std::to_string(lambda));
  }
  ModelSystem sys;
  sys.kind = SystemKind::oscillator;
  sys.lambda = lambda;
  sys.e0.resize(n_basis);
  sys.v = Eigen::MatrixXd::Zero(n_basis, n_basis);
  for (int m = 0; m < n_basis; ++m) {
    sys.e0(m) = m + 0.5;
    sys.v(m, m) = oscillator_element(m, m);
    if (m + 2 < n_basis) {
      const double off = oscillator_element(m, m + 2);
      sys.v(m, m + 2) = off;
      sys.v(m + 2, m) = off;
    }
  }
  return sys;
}

ModelSystem build_cosine_box(int n_basis, double lambda) {
  require_basis(n_basis);
  ModelSystem sys;
  sys.kind = SystemKind::cosine_box;
  sys.lambda = lambda;
  sys.e0.resize(n_basis);
  sys.v.resize(n_basis, n_basis);
  for (int i = 0; i < n_basis; ++i) {
    const int m = i + 1;
    sys.e0(i) = 0.5 * m * m * kPi * kPi;
    for (int j = 0; j <= i; ++j) {
      const double value = cosine_box_element(m, j + 1);
      sys.v(i, j) = value;
      sys.v(j, i) = value;
    }
  }
  return sys;
}

double oscillator_wavefunction(int n, double x) {
  // Normalised Hermite functions by upward recurrence.
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * x * cur -
                        std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double box_wavefunction(int n, double x) {
  return std::sqrt(2.0) * std::sin(n * kPi * (x + 0.5));
}

double quadrature_matrix_element(SystemKind kind, int m, int n) {
  switch (kind) {
    case SystemKind::oscillator: {
      if (m < 0 || n < 0) throw InvalidArgument("oscillator labels start at 0");
      auto integrand = [m, n](double x) {
        return oscillator_wavefunction(m, x) * 0.5 * x * x *
               oscillator_wavefunction(n, x);
      };
      return integrate_panels(integrand, -kOscillatorHalfWidth,
                              kOscillatorHalfWidth);
    }
    case SystemKind::cosine_box: {
      if (m < 1 || n < 1) throw InvalidArgument("box labels start at 1");
      auto integrand = [m, n](double x) {
        return box_wavefunction(m, x) * std::cos(kPi * x) *
               box_wavefunction(n, x);
      };
      return integrate_panels(integrand, -0.5, 0.5);
    }
  }
  throw InvalidArgument("unknown system kind");
}

}  // namespace enpt
