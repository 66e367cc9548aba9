#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "enpt/model_systems.hpp"
#include "enpt/partitioning.hpp"

namespace enpt {

enum class Method { iterative, rspt, bwpt_sc, bwpt_prior, qd_iterative, qd_second };

const char* to_string(Method method);
/// Throws InvalidArgument on an unknown name.
Method parse_method(const std::string& name);
SystemKind parse_system(const std::string& name);
Scheme parse_scheme(const std::string& name);

/// Evenly spaced grid with `steps` points from lo to hi inclusive
/// (a single point at lo when steps == 1).
std::vector<double> lambda_grid(double lo, double hi, int steps);

struct SweepConfig {
  SystemKind system = SystemKind::oscillator;
  Scheme partition = Scheme::epstein_nesbet;
  std::vector<Method> methods = {Method::iterative};
  std::vector<int> orders = {2, 4, 6};
  std::vector<double> lambdas;
  int n_basis = kDefaultOscillatorBasis;
  std::optional<int> target_state;  // defaults to the ground state label
  std::optional<std::vector<int>> model_space;  // QD methods; else selected
  double model_space_threshold = 10.0;
  double tol = 1e-12;
  int k_max = 200;
};

/// Default grids: oscillator 0..5 step 0.1, box -10..50 step 0.5.
std::vector<double> default_lambdas(SystemKind system);
int default_basis(SystemKind system);

struct SweepRow {
  double lambda = 0.0;
  SystemKind system = SystemKind::oscillator;
  Scheme partition = Scheme::epstein_nesbet;
  Method method = Method::iterative;
  int order_or_k = 0;
  std::optional<double> energy;
  std::optional<double> reference;
  std::optional<double> abs_error;
  std::optional<double> rel_error;  // empty when |reference| <= 1e-12
  std::optional<int> iterations;
  std::int64_t wall_time_ns = 0;
  std::string error;  // empty on success
};

/// One row per (lambda, method, order); qd_second emits one row per lambda.
/// Solver failures land in SweepRow::error. Lambda points run in parallel.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

struct LevelRow {
  double lambda = 0.0;
  int n = 0;
  double energy = 0.0;
};

struct LevelsConfig {
  std::vector<double> lambdas;
  int n_basis = kDefaultBoxBasis;
  int levels = 4;
};

/// Lowest box levels (labels 1..levels) from dense diagonalisation.
std::vector<LevelRow> run_levels(const LevelsConfig& config);

struct BenchConfig {
  SystemKind system = SystemKind::oscillator;
  int n_basis = 200;
  double lambda = 1.0;
  int k_max = 20;
  int max_bw_order = 5;
  int repetitions = 7;
};

struct BenchRow {
  std::string method;  // "iterative" or "bwpt_nested"
  int order_or_k = 0;
  int n_basis = 0;
  std::int64_t wall_time_ns = 0;         // median cumulative time
  std::int64_t incremental_time_ns = 0;  // median of time(k) - time(k-1)
  int repetitions = 0;
};

/// Per-order cost of the iterative variant (cumulative time after each
/// energy update) and of Epstein-Nesbet BWPT with literal nested sums at
/// each order (prior-order strategy). Runs single-threaded after a warmup.
std::vector<BenchRow> benchmark_order_scaling(const BenchConfig& config);

}  // namespace enpt
