#include "enpt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <optional>
#include <string>

#include "enpt/errors.hpp"
#include "enpt/kernels.hpp"
#include "enpt/nondegenerate.hpp"
#include "enpt/quasidegenerate.hpp"
#include "enpt/reference.hpp"

namespace enpt {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t nanoseconds_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                              start)
      .count();
}

// Keeps error text inside a single CSV field.
std::string sanitize(std::string message) {
  std::replace(message.begin(), message.end(), ',', ';');
  std::replace(message.begin(), message.end(), '\n', ' ');
  return message;
}

template <typename T>
T median(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2;
}

ModelSystem build_system(SystemKind kind, int n_basis, double lambda) {
  return kind == SystemKind::oscillator ? build_harmonic_oscillator(n_basis, lambda)
                                        : build_cosine_box(n_basis, lambda);
}

int ground_label(SystemKind kind) { return kind == SystemKind::cosine_box ? 1 : 0; }

struct Computed {
  double energy = 0.0;
  std::optional<int> iterations;
};

class SweepPoint {
 public:
  SweepPoint(const SweepConfig& config, double lambda)
      : config_(config), lambda_(lambda) {}

  std::vector<SweepRow> run() {
    std::vector<SweepRow> rows;
    std::string setup_error;
    try {
      system_ = build_system(config_.system, config_.n_basis, lambda_);
      partitioned_ = partition(*system_, config_.partition);
      target_ = config_.target_state.value_or(ground_label(config_.system));
      partitioned_->checked_slot(target_);
      reference_ = reference_energy(*system_, target_);
    } catch (const std::exception& e) {
      setup_error = sanitize(e.what());
    }

    for (Method method : config_.methods) {
      std::vector<int> orders = config_.orders;
      if (method == Method::qd_second) orders = {2};
      for (int order : orders) {
        SweepRow row;
        row.lambda = lambda_;
        row.system = config_.system;
        row.partition = config_.partition;
        row.method = method;
        row.order_or_k = order;
        if (!setup_error.empty()) {
          row.error = setup_error;
          rows.push_back(row);
          continue;
        }
        row.reference = reference_;
        const auto start = Clock::now();
        try {
          const Computed c = compute(method, order);
          row.wall_time_ns = nanoseconds_since(start);
          row.energy = c.energy;
          row.iterations = c.iterations;
          row.abs_error = std::abs(c.energy - reference_);
          if (std::abs(reference_) > 1e-12) {
            row.rel_error = *row.abs_error / std::abs(reference_);
          }
        } catch (const std::exception& e) {
          row.wall_time_ns = nanoseconds_since(start);
          row.error = sanitize(e.what());
        }
        rows.push_back(row);
      }
    }
    return rows;
  }

 private:
  const QdSetup& setup() {
    if (!setup_) {
      const std::vector<int> model =
          config_.model_space.value_or(select_model_space(
              *partitioned_, target_, config_.model_space_threshold));
      setup_ = build_model_space(*partitioned_, model, target_);
    }
    return *setup_;
  }

  Computed compute(Method method, int order) {
    const PartitionedSystem& p = *partitioned_;
    if (method != Method::qd_second && order > config_.k_max) {
      throw InvalidArgument("order " + std::to_string(order) +
                            " exceeds k_max " + std::to_string(config_.k_max));
    }
    switch (method) {
      case Method::iterative: {
        const IterationTrace trace =
            iterative_variant(p, target_, order, config_.tol);
        return {trace.energies.back(), trace.iterations_used};
      }
      case Method::rspt:
        return {rspt(p, target_, order).energy(order), std::nullopt};
      case Method::bwpt_sc:
      case Method::bwpt_prior: {
        BwOptions options;
        options.tol = config_.tol;
        const BwResult r =
            bwpt(p, target_, order,
                 method == Method::bwpt_sc ? BwStrategy::self_consistent
                                           : BwStrategy::prior_order,
                 options);
        return {r.energy, r.iterations};
      }
      case Method::qd_iterative: {
        const QdIterationTrace trace = qd_iterate(setup(), order, config_.tol);
        return {trace.energies.back(), trace.iterations_used};
      }
      case Method::qd_second:
        return {qd_second_order(setup()), std::nullopt};
    }
    throw InvalidArgument("unknown method");
  }

  const SweepConfig& config_;
  double lambda_;
  std::optional<ModelSystem> system_;
  std::optional<PartitionedSystem> partitioned_;
  std::optional<QdSetup> setup_;
  int target_ = 0;
  double reference_ = 0.0;
};

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::iterative:
      return "iterative";
    case Method::rspt:
      return "rspt";
    case Method::bwpt_sc:
      return "bwpt_sc";
    case Method::bwpt_prior:
      return "bwpt_prior";
    case Method::qd_iterative:
      return "qd_iterative";
    case Method::qd_second:
      return "qd_second";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::iterative, Method::rspt, Method::bwpt_sc,
                   Method::bwpt_prior, Method::qd_iterative, Method::qd_second}) {
    if (name == to_string(m)) return m;
  }
  throw InvalidArgument("unknown method '" + name + "'");
}

SystemKind parse_system(const std::string& name) {
  if (name == "oscillator") return SystemKind::oscillator;
  if (name == "box") return SystemKind::cosine_box;
  throw InvalidArgument("unknown system '" + name + "'");
}

Scheme parse_scheme(const std::string& name) {
  if (name == "en") return Scheme::epstein_nesbet;
  if (name == "standard") return Scheme::standard;
  throw InvalidArgument("unknown partition '" + name + "'");
}

std::vector<double> lambda_grid(double lo, double hi, int steps) {
  if (steps < 1) throw InvalidArgument("lambda grid needs at least one point");
  if (steps == 1) return {lo};
  if (!(hi >= lo)) throw InvalidArgument("lambda-max must be >= lambda-min");
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) {
    grid[i] = lo + (hi - lo) * i / (steps - 1);
  }
  return grid;
}

std::vector<double> default_lambdas(SystemKind system) {
  return system == SystemKind::oscillator ? lambda_grid(0.0, 5.0, 51)
                                          : lambda_grid(-10.0, 50.0, 121);
}

int default_basis(SystemKind system) {
  return system == SystemKind::oscillator ? kDefaultOscillatorBasis
                                          : kDefaultBoxBasis;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.methods.empty()) throw InvalidArgument("no methods requested");
  if (config.orders.empty()) throw InvalidArgument("no orders requested");
  if (config.lambdas.empty()) throw InvalidArgument("empty lambda grid");
  if (config.n_basis < 4) throw InvalidArgument("n_basis must be at least 4");
  if (config.k_max < 1) throw InvalidArgument("k_max must be >= 1");
  for (int order : config.orders) {
    if (order < 1) throw InvalidArgument("orders must be >= 1");
  }

  const int points = static_cast<int>(config.lambdas.size());
  std::vector<std::vector<SweepRow>> per_point(points);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < points; ++i) {
    per_point[i] = SweepPoint(config, config.lambdas[i]).run();
  }
  std::vector<SweepRow> rows;
  for (auto& block : per_point) {
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

std::vector<LevelRow> run_levels(const LevelsConfig& config) {
  if (config.lambdas.empty()) throw InvalidArgument("empty lambda grid");
  const int points = static_cast<int>(config.lambdas.size());
  std::vector<Eigen::VectorXd> levels(points);
  std::vector<std::exception_ptr> failures(points);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < points; ++i) {
    try {
      levels[i] = box_levels(config.n_basis, config.lambdas[i], config.levels);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<LevelRow> rows;
  for (int i = 0; i < points; ++i) {
    for (int n = 0; n < config.levels; ++n) {
      rows.push_back({config.lambdas[i], n + 1, levels[i](n)});
    }
  }
  return rows;
}

std::vector<BenchRow> benchmark_order_scaling(const BenchConfig& config) {
  if (config.repetitions < 5) {
    throw InvalidArgument("benchmark needs at least 5 repetitions");
  }
  if (config.k_max < 2) throw InvalidArgument("benchmark k_max must be >= 2");
  if (config.max_bw_order < 2 || config.max_bw_order > 5) {
    throw InvalidArgument("benchmark BWPT order must lie in 2..5");
  }
  kernels::ThreadLimit single_thread(1);

  const ModelSystem sys = build_system(config.system, config.n_basis, config.lambda);
  const PartitionedSystem p = partition(sys, Scheme::epstein_nesbet);
  const int n = ground_label(config.system);

  auto iterative_stamps = [&] {
    std::vector<std::int64_t> stamps(config.k_max + 1, 0);
    const auto start = Clock::now();
    IterativeVariant solver(p, n);
    stamps[1] = nanoseconds_since(start);
    for (int k = 2; k <= config.k_max; ++k) {
      solver.advance();
      stamps[k] = nanoseconds_since(start);
    }
    return stamps;
  };
  auto bw_time = [&](int order) {
    const auto start = Clock::now();
    bwpt(p, n, order, BwStrategy::prior_order);
    return nanoseconds_since(start);
  };

  // Warmup.
  iterative_stamps();
  bw_time(2);

  std::vector<BenchRow> rows;
  std::vector<std::vector<std::int64_t>> samples;
  for (int r = 0; r < config.repetitions; ++r) samples.push_back(iterative_stamps());
  for (int k = 1; k <= config.k_max; ++k) {
    std::vector<std::int64_t> cumulative, increment;
    for (const auto& s : samples) {
      cumulative.push_back(s[k]);
      increment.push_back(s[k] - s[k - 1]);
    }
    rows.push_back({"iterative", k, config.n_basis, median(cumulative),
                    median(increment), config.repetitions});
  }

  std::int64_t previous = 0;
  for (int order = 2; order <= config.max_bw_order; ++order) {
    std::vector<std::int64_t> times;
    for (int r = 0; r < config.repetitions; ++r) times.push_back(bw_time(order));
    const std::int64_t t = median(times);
    rows.push_back({"bwpt_nested", order, config.n_basis, t, t - previous,
                    config.repetitions});
    previous = t;
  }
  return rows;
}

}  // namespace enpt
