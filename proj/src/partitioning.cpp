#include "enpt/partitioning.hpp"

#include <string>

#include "enpt/errors.hpp"

namespace enpt {

const char* to_string(Scheme scheme) {
  return scheme == Scheme::epstein_nesbet ? "en" : "standard";
}

int PartitionedSystem::checked_slot(int label) const {
  const int s = slot(label);
  if (s < 0 || s >= size()) {
    throw InvalidArgument("state " + std::to_string(label) +
                          " is outside the truncated basis");
  }
  return s;
}

double PartitionedSystem::denominator_guard() const {
  return 1e-10 * diagonal.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd PartitionedSystem::hamiltonian() const {
  Eigen::MatrixXd h = coupling;
  h.diagonal() += diagonal;
  return h;
}

PartitionedSystem partition(const ModelSystem& sys, Scheme scheme) {
  if (sys.size() == 0 || sys.v.rows() != sys.size() ||
      sys.v.cols() != sys.size()) {
    throw InvalidArgument("model system has inconsistent dimensions");
  }
  PartitionedSystem p;
  p.scheme = scheme;
  p.kind = sys.kind;
  p.lambda = sys.lambda;
  p.coupling = sys.lambda * sys.v;
  if (scheme == Scheme::epstein_nesbet) {
    p.diagonal = sys.e0 + sys.lambda * sys.v.diagonal();
    p.coupling.diagonal().setZero();
  } else {
    p.diagonal = sys.e0;
  }
  return p;
}

}  // namespace enpt
