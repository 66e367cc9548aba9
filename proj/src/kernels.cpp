#include "enpt/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace enpt::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int threads) {
#ifdef _OPENMP
  omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

ThreadLimit::ThreadLimit(int threads) : previous_(max_threads()) {
  set_threads(threads);
}

ThreadLimit::~ThreadLimit() { set_threads(previous_); }

namespace {

Eigen::VectorXd inverse_denominators(const Eigen::VectorXd& d, int target,
                                     double energy) {
  Eigen::VectorXd r(d.size());
  for (Eigen::Index m = 0; m < d.size(); ++m) r(m) = 1.0 / (energy - d(m));
  r(target) = 0.0;
  return r;
}

// Sum over the remaining `depth` path indices, given the running product
// `weight` that ends on index `from`.
double extend_path(const Eigen::MatrixXd& w, const Eigen::VectorXd& r,
                   int target, int from, double weight, int depth) {
  const int n = static_cast<int>(r.size());
  double sum = 0.0;
  if (depth == 1) {
    for (int m = 0; m < n; ++m) {
      if (m == target) continue;
      sum += weight * w(from, m) * r(m) * w(m, target);
    }
    return sum;
  }
  for (int m = 0; m < n; ++m) {
    if (m == target) continue;
    sum += extend_path(w, r, target, m, weight * w(from, m) * r(m), depth - 1);
  }
  return sum;
}

}  // namespace

namespace serial {

void symmetric_matvec(const Eigen::MatrixXd& w, const Eigen::VectorXd& x,
                      Eigen::VectorXd& out) {
  const Eigen::Index n = x.size();
  out.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) acc += w(j, i) * x(j);
    out(i) = acc;
  }
}

double path_sum(const Eigen::MatrixXd& w, const Eigen::VectorXd& d,
                int target, double energy, int length) {
  const Eigen::VectorXd r = inverse_denominators(d, target, energy);
  if (length == 2) return extend_path(w, r, target, target, 1.0, 1);
  const int n = static_cast<int>(d.size());
  double sum = 0.0;
  for (int m = 0; m < n; ++m) {
    if (m == target) continue;
    sum += extend_path(w, r, target, m, w(target, m) * r(m), length - 2);
  }
  return sum;
}

}  // namespace serial

namespace omp {

void symmetric_matvec(const Eigen::MatrixXd& w, const Eigen::VectorXd& x,
                      Eigen::VectorXd& out) {
  const Eigen::Index n = x.size();
  out.resize(n);
  // Column i of a symmetric matrix is row i; each entry is one thread's
  // contiguous dot product, so the result does not depend on thread count.
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) acc += w(j, i) * x(j);
    out(i) = acc;
  }
}

double path_sum(const Eigen::MatrixXd& w, const Eigen::VectorXd& d,
                int target, double energy, int length) {
  const Eigen::VectorXd r = inverse_denominators(d, target, energy);
  if (length == 2) return extend_path(w, r, target, target, 1.0, 1);
  const int n = static_cast<int>(d.size());
  // Per-branch partials are reduced in index order for reproducibility.
  std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m < n; ++m) {
    if (m == target) continue;
    partial[m] =
        extend_path(w, r, target, m, w(target, m) * r(m), length - 2);
  }
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

}  // namespace omp

}  // namespace enpt::kernels
