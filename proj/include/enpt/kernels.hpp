#pragma once

#include <Eigen/Dense>

// Inner loops shared by the solvers. Each kernel has a serial reference in
// `serial` and an OpenMP version in `omp` that must agree with it; the
// solvers call the OpenMP versions.
namespace enpt::kernels {

/// Number of threads the OpenMP kernels will use (1 without OpenMP).
int max_threads();

/// Sets the OpenMP thread count for the calling thread's parallel regions.
void set_threads(int threads);

/// Restores the previous thread count on destruction.
class ThreadLimit {
 public:
  explicit ThreadLimit(int threads);
  ~ThreadLimit();
  ThreadLimit(const ThreadLimit&) = delete;
  ThreadLimit& operator=(const ThreadLimit&) = delete;

 private:
  int previous_;
};

namespace serial {

/// out = w * x for symmetric w.
void symmetric_matvec(const Eigen::MatrixXd& w, const Eigen::VectorXd& x,
                      Eigen::VectorXd& out);

/// Sum over all index paths m_1..m_{length-1}, none equal to `target`, of
///   w(t,m_1) w(m_1,m_2) ... w(m_{length-1},t) / prod_i (energy - d(m_i)),
/// written as (length-1) literal nested loops. length >= 2.
double path_sum(const Eigen::MatrixXd& w, const Eigen::VectorXd& d,
                int target, double energy, int length);

}  // namespace serial

namespace omp {

void symmetric_matvec(const Eigen::MatrixXd& w, const Eigen::VectorXd& x,
                      Eigen::VectorXd& out);

double path_sum(const Eigen::MatrixXd& w, const Eigen::VectorXd& d,
                int target, double energy, int length);

}  // namespace omp

}  // namespace enpt::kernels
