#pragma once

#include <Eigen/Dense>

#include "enpt/model_systems.hpp"

namespace enpt {

enum class Scheme { epstein_nesbet, standard };

const char* to_string(Scheme scheme);

/// H = diag(diagonal) + coupling, with lambda already folded into `coupling`.
///
/// Epstein-Nesbet: diagonal = E^(0) + lambda V_mm, coupling has an exactly
/// zero diagonal. Standard: diagonal = E^(0), coupling = lambda V.
struct PartitionedSystem {
  Scheme scheme = Scheme::epstein_nesbet;
  SystemKind kind = SystemKind::oscillator;
  Eigen::VectorXd diagonal;  // D_m
  Eigen::MatrixXd coupling;  // W_lm
  double lambda = 0.0;

  int size() const { return static_cast<int>(diagonal.size()); }
  int first_label() const { return kind == SystemKind::cosine_box ? 1 : 0; }
  int slot(int label) const { return label - first_label(); }
  int label(int slot) const { return slot + first_label(); }

  /// Throws InvalidArgument if `label` is not a stored state.
  int checked_slot(int label) const;

  /// First-order energy D_n + W_nn.
  double first_order_energy(int slot) const {
    return diagonal(slot) + coupling(slot, slot);
  }

  /// Guard below which |E - D_m| counts as a vanishing denominator.
  double denominator_guard() const;

  Eigen::MatrixXd hamiltonian() const;
};

PartitionedSystem partition(const ModelSystem& sys, Scheme scheme);

}  // namespace enpt
