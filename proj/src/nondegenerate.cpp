#include "enpt/nondegenerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "enpt/errors.hpp"
#include "enpt/kernels.hpp"

namespace enpt {

namespace {

// Throws unless |energy - D_m| clears the guard for every m other than slot.
void check_denominators(const PartitionedSystem& p, int slot, double energy,
                        double guard) {
  for (int m = 0; m < p.size(); ++m) {
    if (m == slot) continue;
    const double denom = energy - p.diagonal(m);
    if (std::abs(denom) < guard) {
      throw SmallDenominator(p.label(slot), p.label(m), denom);
    }
  }
}

struct RsRecursion {
  std::vector<Eigen::VectorXd> corrections;  // psi^(1..)
  std::vector<double> energies;              // eps_1..
};

// Intermediate-normalised RS recursion:
//   eps_k   = (W psi^(k-1))_n
//   psi^(k) = R [ W psi^(k-1) - sum_{j=1}^{k-1} eps_j psi^(k-j) ],
// with R = (D_n - D_m)^-1 off the target and psi^(0) = e_n.
RsRecursion rs_recursion(const PartitionedSystem& p, int slot,
                         int energy_order) {
  const int n = p.size();
  check_denominators(p, slot, p.diagonal(slot), p.denominator_guard());
  Eigen::VectorXd resolvent(n);
  for (int m = 0; m < n; ++m) {
    resolvent(m) = m == slot ? 0.0 : 1.0 / (p.diagonal(slot) - p.diagonal(m));
  }

  RsRecursion rs;
  Eigen::VectorXd previous = Eigen::VectorXd::Unit(n, slot);
  Eigen::VectorXd product;
  for (int k = 1; k <= energy_order; ++k) {
    kernels::omp::symmetric_matvec(p.coupling, previous, product);
    rs.energies.push_back(product(slot));
    if (k == energy_order) break;
    Eigen::VectorXd next = product;
    for (int j = 1; j < k; ++j) {
      next -= rs.energies[j - 1] * rs.corrections[k - j - 1];
    }
    next = next.cwiseProduct(resolvent);
    next(slot) = 0.0;
    rs.corrections.push_back(next);
    previous = rs.corrections.back();
  }
  return rs;
}

}  // namespace

std::vector<Eigen::VectorXd> rspt_coefficients(const PartitionedSystem& p,
                                               int n, int order) {
  if (order < 1) throw InvalidArgument("coefficient order must be >= 1");
  const int slot = p.checked_slot(n);
  return rs_recursion(p, slot, order + 1).corrections;
}

EnergySeries rspt(const PartitionedSystem& p, int n, int order) {
  if (order < 2 || order > 4) {
    throw InvalidArgument("RSPT order must be 2, 3 or 4, got " +
                          std::to_string(order));
  }
  const int slot = p.checked_slot(n);
  const RsRecursion rs = rs_recursion(p, slot, order);

  EnergySeries out;
  out.n = n;
  out.e1 = p.diagonal(slot) + rs.energies[0];
  out.cumulative.push_back(out.e1);
  double* corrections[] = {&out.e2, &out.e3, &out.e4};
  for (int k = 2; k <= order; ++k) {
    *corrections[k - 2] = rs.energies[k - 1];
    out.cumulative.push_back(out.cumulative.back() + rs.energies[k - 1]);
  }
  return out;
}

double bw_series(const PartitionedSystem& p, int n, double energy, int order,
                 BwEvaluator evaluator) {
  if (order < 1) throw InvalidArgument("BW series order must be >= 1");
  const int slot = p.checked_slot(n);
  check_denominators(p, slot, energy, p.denominator_guard());

  double total = p.first_order_energy(slot);
  if (order == 1) return total;

  if (evaluator == BwEvaluator::nested_sum) {
    for (int length = 2; length <= order; ++length) {
      total += kernels::omp::path_sum(p.coupling, p.diagonal, slot, energy,
                                      length);
    }
    return total;
  }

  const int size = p.size();
  Eigen::VectorXd resolvent(size);
  for (int m = 0; m < size; ++m) {
    resolvent(m) = m == slot ? 0.0 : 1.0 / (energy - p.diagonal(m));
  }
  Eigen::VectorXd path = p.coupling.col(slot).cwiseProduct(resolvent);
  Eigen::VectorXd product;
  for (int length = 2; length <= order; ++length) {
    total += p.coupling.col(slot).dot(path);
    if (length == order) break;
    kernels::omp::symmetric_matvec(p.coupling, path, product);
    path = product.cwiseProduct(resolvent);
  }
  return total;
}

namespace {

constexpr int kBracketIterations = 200;

BwResult bw_bracketed(const PartitionedSystem& p, int n, int order,
                      const BwOptions& options, int spent) {
  const int slot = p.slot(n);
  const double start = p.first_order_energy(slot);
  const double guard = p.denominator_guard();

  double below = -std::numeric_limits<double>::infinity();
  double above = std::numeric_limits<double>::infinity();
  for (int m = 0; m < p.size(); ++m) {
    if (m == slot) continue;
    const double dm = p.diagonal(m);
    if (dm <= start) below = std::max(below, dm);
    if (dm >= start) above = std::min(above, dm);
  }
  const double span = 10.0 * (1.0 + p.coupling.col(slot).cwiseAbs().sum());
  const double margin = 10.0 * guard;
  const double lo_limit = std::isfinite(below) ? below + margin : start - span;
  const double hi_limit = std::isfinite(above) ? above - margin : start + span;

  int evaluations = spent;
  auto f = [&](double e) -> std::optional<double> {
    ++evaluations;
    try {
      return e - bw_series(p, n, e, order, options.evaluator);
    } catch (const SmallDenominator&) {
      return std::nullopt;
    }
  };

  const auto f_start = f(start);
  if (f_start && *f_start == 0.0) return {start, evaluations, true};

  // Walk outward from the unperturbed energy on both sides and keep the
  // nearest sign change.
  double step = std::max(margin, 1e-8 * std::max(1.0, std::abs(start)));
  double lo_prev = start, hi_prev = start;
  std::optional<double> f_lo_prev = f_start, f_hi_prev = f_start;
  bool lo_open = true, hi_open = true;
  while (lo_open || hi_open) {
    for (int side = 0; side < 2; ++side) {
      bool& open = side == 0 ? lo_open : hi_open;
      if (!open) continue;
      double& prev = side == 0 ? lo_prev : hi_prev;
      std::optional<double>& f_prev = side == 0 ? f_lo_prev : f_hi_prev;
      double point = side == 0 ? start - step : start + step;
      if (side == 0 && point <= lo_limit) {
        point = lo_limit;
        open = false;
      }
      if (side == 1 && point >= hi_limit) {
        point = hi_limit;
        open = false;
      }
      const auto f_point = f(point);
      if (f_point && f_prev && (*f_point == 0.0 || (*f_point > 0) != (*f_prev > 0))) {
        double a = std::min(prev, point), b = std::max(prev, point);
        double fa = side == 0 ? *f_point : *f_prev;
        double fb = side == 0 ? *f_prev : *f_point;
        if (fa == 0.0) return {a, evaluations, true};
        if (fb == 0.0) return {b, evaluations, true};
        auto g = [&](double e) {
          return e - bw_series(p, n, e, order, options.evaluator);
        };
        boost::uintmax_t max_iter = kBracketIterations;
        const auto root = boost::math::tools::toms748_solve(
            g, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(50),
            max_iter);
        evaluations += static_cast<int>(max_iter);
        return {0.5 * (root.first + root.second), evaluations, true};
      }
      prev = point;
      f_prev = f_point;
    }
    step *= 2.0;
  }
  throw NonConvergence("Brillouin-Wigner root search", evaluations);
}

}  // namespace

BwResult bwpt(const PartitionedSystem& p, int n, int order,
              BwStrategy strategy, const BwOptions& options) {
  if (order < 2 || order > 5) {
    throw InvalidArgument("BWPT order must lie in 2..5, got " +
                          std::to_string(order));
  }
  const int slot = p.checked_slot(n);
  const double start = p.first_order_energy(slot);

  if (strategy == BwStrategy::prior_order) {
    double energy = start;
    for (int k = 2; k <= order; ++k) {
      energy = bw_series(p, n, energy, k, options.evaluator);
    }
    return {energy, 1, false};
  }

  double energy = start;
  double alpha = 1.0;
  double previous_step = 0.0;
  int it = 0;
  while (it < options.max_iterations) {
    double rhs;
    try {
      rhs = bw_series(p, n, energy, order, options.evaluator);
    } catch (const SmallDenominator&) {
      break;
    }
    ++it;
    const double step = rhs - energy;
    if (std::abs(step) < options.tol * std::max(1.0, std::abs(energy))) {
      return {rhs, it, false};
    }
    if (step * previous_step < 0.0 &&
        std::abs(step) > 0.5 * std::abs(previous_step)) {
      alpha = std::max(0.5 * alpha, 1.0 / 64.0);
    }
    energy += alpha * step;
    previous_step = step;
  }
  return bw_bracketed(p, n, order, options, it);
}

IterativeVariant::IterativeVariant(const PartitionedSystem& p, int n)
    : p_(p), slot_(p.checked_slot(n)), guard_(p.denominator_guard()) {
  state_ = Eigen::VectorXd::Unit(p.size(), slot_);
  product_ = p.coupling.col(slot_);
  energies_.push_back(p.diagonal(slot_) + product_(slot_));
}

double IterativeVariant::advance() {
  const double e = energies_.back();
  check_denominators(p_, slot_, e, guard_);
  for (int m = 0; m < p_.size(); ++m) {
    state_(m) = m == slot_ ? 1.0 : product_(m) / (e - p_.diagonal(m));
  }
  kernels::omp::symmetric_matvec(p_.coupling, state_, product_);
  energies_.push_back(p_.diagonal(slot_) + product_(slot_));
  return energies_.back();
}

IterationTrace iterative_variant(const PartitionedSystem& p, int n, int k_max,
                                 double tol) {
  if (k_max < 1) throw InvalidArgument("k_max must be >= 1");
  IterativeVariant solver(p, n);
  IterationTrace trace;
  trace.n = n;
  while (static_cast<int>(solver.energies().size()) < k_max) {
    const double before = solver.energy();
    const double after = solver.advance();
    ++trace.iterations_used;
    if (std::abs(after - before) < tol) {
      trace.converged = true;
      break;
    }
  }
  trace.energies = solver.energies();
  trace.coefficients = solver.state();
  trace.residual_norm = residual(p, n, trace.coefficients, solver.energy());
  return trace;
}

double residual(const PartitionedSystem& p, int n,
                const Eigen::VectorXd& coefficients, double energy) {
  const int slot = p.checked_slot(n);
  if (coefficients.size() != p.size()) {
    throw InvalidArgument("coefficient vector has the wrong length");
  }
  Eigen::VectorXd c = coefficients;
  c(slot) = 1.0;
  Eigen::VectorXd r;
  kernels::omp::symmetric_matvec(p.coupling, c, r);
  r += (p.diagonal.array() - energy).matrix().cwiseProduct(c);
  return r.norm();
}

}  // namespace enpt
