#include "enpt/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "enpt/errors.hpp"

namespace enpt {

double exact_oscillator_energy(int n, double lambda) {
  if (!(lambda > -1.0)) {
    throw InvalidArgument("exact oscillator energy requires lambda > -1");
  }
  if (n < 0) throw InvalidArgument("oscillator labels start at 0");
  return std::sqrt(1.0 + lambda) * (n + 0.5);
}

ReferenceSpectrum symmetric_eigensolve(const Eigen::MatrixXd& h,
                                       bool keep_vectors, int max_sweeps) {
  if (h.rows() != h.cols()) {
    throw InvalidArgument("eigensolve requires a square matrix");
  }
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd a = 0.5 * (h + h.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = a.norm();
  const double target = 1e-14 * scale;
  auto off_norm = [&a, n] {
    double s = 0.0;
    for (Eigen::Index q = 1; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) s += a(p, q) * a(p, q);
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  while (off_norm() > target) {
    if (sweep == max_sweeps) throw NonConvergence("Jacobi eigensolver", sweep);
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <=
            1e-18 * (std::abs(a(p, p)) + std::abs(a(q, q))) + 1e-300) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const Eigen::VectorXd col_p = a.col(p);
        const Eigen::VectorXd col_q = a.col(q);
        a.col(p) = c * col_p - s * col_q;
        a.col(q) = s * col_p + c * col_q;
        a.row(p) = a.col(p).transpose();
        a.row(q) = a.col(q).transpose();
        a(p, p) = col_p(p) - t * apq;
        a(q, q) = col_q(q) + t * apq;
        a(p, q) = a(q, p) = 0.0;

        if (keep_vectors) {
          const Eigen::VectorXd vp = v.col(p);
          v.col(p) = c * vp - s * v.col(q);
          v.col(q) = s * vp + c * v.col(q);
        }
      }
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) {
                     return a(i, i) < a(j, j);
                   });

  ReferenceSpectrum out;
  out.source = ReferenceSource::dense_diag;
  out.sweeps = sweep;
  out.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.eigenvalues(i) = a(order[i], order[i]);
  if (keep_vectors) {
    Eigen::MatrixXd sorted(n, n);
    for (Eigen::Index i = 0; i < n; ++i) sorted.col(i) = v.col(order[i]);
    out.eigenvectors = std::move(sorted);
  }
  return out;
}

ReferenceSpectrum dense_eigensolve(const Eigen::VectorXd& d,
                                   const Eigen::MatrixXd& w,
                                   bool keep_vectors) {
  if (w.rows() != d.size() || w.cols() != d.size()) {
    throw InvalidArgument("diagonal and coupling sizes differ");
  }
  Eigen::MatrixXd h = w;
  h.diagonal() += d;
  return symmetric_eigensolve(h, keep_vectors);
}

Eigen::VectorXd box_levels(int n_basis, double lambda, int count) {
  const ModelSystem sys = build_cosine_box(n_basis, lambda);
  if (count < 1 || count > n_basis) {
    throw InvalidArgument("level count must lie in [1, n_basis]");
  }
  const ReferenceSpectrum spec = symmetric_eigensolve(sys.hamiltonian(), false);
  return spec.eigenvalues.head(count);
}

double reference_energy(const ModelSystem& sys, int n) {
  switch (sys.kind) {
    case SystemKind::oscillator:
      return exact_oscillator_energy(n, sys.lambda);
    case SystemKind::cosine_box: {
      const int slot = sys.slot(n);
      if (slot < 0 || slot >= sys.size()) {
        throw InvalidArgument("state " + std::to_string(n) +
                              " is outside the truncated basis");
      }
      return box_levels(2 * sys.size(), sys.lambda, slot + 1)(slot);
    }
  }
  throw InvalidArgument("unknown system kind");
}

}  // namespace enpt
