#include "enpt/quasidegenerate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "enpt/errors.hpp"
#include "enpt/kernels.hpp"
#include "enpt/nondegenerate.hpp"
#include "enpt/reference.hpp"

namespace enpt {

QdSetup build_model_space(const PartitionedSystem& p,
                          const std::vector<int>& indices, int target) {
  if (p.scheme != Scheme::epstein_nesbet) {
    throw InvalidArgument(
        "quasi-degenerate treatment requires Epstein-Nesbet partitioning");
  }
  std::vector<int> model = indices;
  std::sort(model.begin(), model.end());
  if (model.empty()) throw InvalidArgument("model space is empty");
  if (std::adjacent_find(model.begin(), model.end()) != model.end()) {
    throw InvalidArgument("model space lists a state twice");
  }
  for (int label : model) p.checked_slot(label);
  if (static_cast<int>(model.size()) >= p.size()) {
    throw InvalidArgument("model space must leave a nonempty complement");
  }
  const auto target_it = std::find(model.begin(), model.end(), target);
  if (target_it == model.end()) {
    throw InvalidArgument("target state " + std::to_string(target) +
                          " is not in the model space");
  }

  const int d = static_cast<int>(model.size());
  Eigen::MatrixXd block(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      block(i, j) = p.coupling(p.slot(model[i]), p.slot(model[j]));
    }
    block(i, i) += p.diagonal(p.slot(model[i]));
  }
  ReferenceSpectrum spec = symmetric_eigensolve(block, true);

  QdSetup setup;
  setup.system = p;
  setup.indices = model;
  setup.target = target;
  setup.script_e = spec.eigenvalues;
  setup.rotation = std::move(*spec.eigenvectors);
  for (int j = 0; j < d; ++j) {
    Eigen::Index dominant = 0;
    setup.rotation.col(j).cwiseAbs().maxCoeff(&dominant);
    if (setup.rotation(dominant, j) < 0.0) setup.rotation.col(j) *= -1.0;
  }

  const int target_row = static_cast<int>(target_it - model.begin());
  const Eigen::VectorXd weight = setup.rotation.row(target_row).cwiseAbs();
  Eigen::Index best = 0;
  weight.maxCoeff(&best);
  for (int j = 0; j < d; ++j) {
    if (j != best && std::abs(weight(j) - weight(best)) < 1e-9) {
      throw TargetAmbiguous("correct zeroth-order states " +
                            std::to_string(best) + " and " +
                            std::to_string(j) + " weigh state " +
                            std::to_string(target) + " equally");
    }
  }
  setup.n_local = static_cast<int>(best);

  for (int s = 0; s < p.size(); ++s) {
    if (!std::binary_search(model.begin(), model.end(), p.label(s))) {
      setup.complement.push_back(p.label(s));
    }
  }
  const int nc = static_cast<int>(setup.complement.size());
  Eigen::MatrixXd cross(d, nc);
  for (int i = 0; i < d; ++i) {
    for (int l = 0; l < nc; ++l) {
      cross(i, l) = p.coupling(p.slot(model[i]), p.slot(setup.complement[l]));
    }
  }
  setup.vbar = setup.rotation.transpose() * cross;
  return setup;
}

double qd_second_order(const QdSetup& setup) {
  const PartitionedSystem& p = setup.system;
  const double guard = p.denominator_guard();
  const double e_n = setup.script_e(setup.n_local);
  double energy = e_n;
  for (int l = 0; l < static_cast<int>(setup.complement.size()); ++l) {
    const double denom = e_n - p.diagonal(p.slot(setup.complement[l]));
    if (std::abs(denom) < guard) {
      throw SmallDenominator(setup.target, setup.complement[l], denom);
    }
    const double coupling = setup.vbar(setup.n_local, l);
    energy += coupling * coupling / denom;
  }
  return energy;
}

Eigen::VectorXd assemble_state(const QdSetup& setup,
                               const QdIterationTrace& trace) {
  const PartitionedSystem& p = setup.system;
  Eigen::VectorXd state = Eigen::VectorXd::Zero(p.size());
  const Eigen::VectorXd model_part = setup.rotation * trace.inner_coeffs;
  for (int i = 0; i < setup.dimension(); ++i) {
    state(p.slot(setup.indices[i])) = model_part(i);
  }
  for (int l = 0; l < static_cast<int>(setup.complement.size()); ++l) {
    state(p.slot(setup.complement[l])) = trace.outer_coeffs(l);
  }
  return state;
}

QdIterationTrace qd_iterate(const QdSetup& setup, int k_max, double tol) {
  if (k_max < 1) throw InvalidArgument("k_max must be >= 1");
  const PartitionedSystem& p = setup.system;
  const int d = setup.dimension();
  const int nc = static_cast<int>(setup.complement.size());

  // The rotated Hamiltonian: script_e on the model slots, vbar between model
  // and complement, no model-model coupling. The outer/inner recursion is the
  // one-state iteration on this matrix.
  PartitionedSystem rotated = p;
  for (int i = 0; i < d; ++i) {
    const int si = p.slot(setup.indices[i]);
    rotated.diagonal(si) = setup.script_e(i);
    for (int j = 0; j < d; ++j) rotated.coupling(si, p.slot(setup.indices[j])) = 0.0;
    for (int l = 0; l < nc; ++l) {
      const int sl = p.slot(setup.complement[l]);
      rotated.coupling(si, sl) = rotated.coupling(sl, si) = setup.vbar(i, l);
    }
  }

  IterationTrace inner;
  try {
    inner = iterative_variant(rotated, setup.indices[setup.n_local], k_max, tol);
  } catch (const SmallDenominator& e) {
    throw SmallDenominator(setup.target, e.other(), e.denominator());
  }
  QdIterationTrace trace;
  trace.energies = inner.energies;
  trace.converged = inner.converged;
  trace.iterations_used = inner.iterations_used;
  trace.inner_coeffs.resize(d);
  trace.outer_coeffs.resize(nc);
  for (int i = 0; i < d; ++i) {
    trace.inner_coeffs(i) = inner.coefficients(p.slot(setup.indices[i]));
  }
  for (int l = 0; l < nc; ++l) {
    trace.outer_coeffs(l) = inner.coefficients(p.slot(setup.complement[l]));
  }

  const Eigen::VectorXd state = assemble_state(setup, trace);
  Eigen::VectorXd r;
  kernels::omp::symmetric_matvec(p.coupling, state, r);
  r += (p.diagonal.array() - trace.energies.back()).matrix().cwiseProduct(state);
  trace.residual_norm = r.norm();
  return trace;
}

std::vector<int> select_model_space(const PartitionedSystem& p, int n,
                                    double ratio_threshold) {
  if (!(ratio_threshold > 1.0)) {
    throw InvalidArgument("ratio threshold must exceed 1");
  }
  const int slot = p.checked_slot(n);
  std::vector<int> model;
  for (int m = 0; m < p.size(); ++m) {
    if (m == slot || std::abs(p.diagonal(m) - p.diagonal(slot)) <
                         ratio_threshold * std::abs(p.coupling(slot, m))) {
      model.push_back(p.label(m));
    }
  }
  return model;
}

}  // namespace enpt
