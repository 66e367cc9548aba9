// Command-line driver: error-vs-lambda sweeps, box level diagrams and the
// per-order cost benchmark, all written as CSV.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "enpt/csv.hpp"
#include "enpt/errors.hpp"
#include "enpt/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAllFailed = 2;

struct Options {
  std::optional<std::string> system;  // oscillator, or box for levels
  std::string partition = "en";
  std::vector<std::string> methods = {"iterative"};
  std::vector<int> orders;
  std::optional<double> lambda_min;
  std::optional<double> lambda_max;
  std::optional<int> lambda_steps;
  std::optional<int> n_basis;
  std::optional<int> target_state;
  std::vector<int> model_space;
  double tol = 1e-12;
  std::optional<int> k_max;
  std::string out;
  bool seedless = false;
  int levels = 4;
  int repetitions = 7;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--system", o.system, "oscillator | box")
      ->check(CLI::IsMember({"oscillator", "box"}));
  cmd->add_option("--partition", o.partition, "en | standard")
      ->check(CLI::IsMember({"en", "standard"}));
  cmd->add_option("--methods", o.methods,
                  "iterative,rspt,bwpt_sc,bwpt_prior,qd_iterative,qd_second")
      ->delimiter(',');
  cmd->add_option("--orders", o.orders, "orders / iteration counts")
      ->delimiter(',');
  cmd->add_option("--lambda-min", o.lambda_min);
  cmd->add_option("--lambda-max", o.lambda_max);
  cmd->add_option("--lambda-steps", o.lambda_steps, "number of grid points");
  cmd->add_option("--n-basis", o.n_basis);
  cmd->add_option("--target-state", o.target_state, "state label");
  cmd->add_option("--model-space", o.model_space, "state labels")
      ->delimiter(',');
  cmd->add_option("--tol", o.tol);
  cmd->add_option("--k-max", o.k_max);
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_flag("--seedless", o.seedless, "accepted; every run is deterministic");
}

std::vector<double> grid_from(const Options& o, enpt::SystemKind system) {
  if (!o.lambda_min && !o.lambda_max && !o.lambda_steps) {
    return enpt::default_lambdas(system);
  }
  const std::vector<double> defaults = enpt::default_lambdas(system);
  const double lo = o.lambda_min.value_or(defaults.front());
  const double hi = o.lambda_max.value_or(defaults.back());
  const int steps = o.lambda_steps.value_or(lo == hi ? 1 : 11);
  return enpt::lambda_grid(lo, hi, steps);
}

template <typename Write>
void emit(const std::string& path, Write write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw enpt::InvalidArgument("cannot open '" + path + "'");
  write(file);
}

int run_sweep(const Options& o) {
  enpt::SweepConfig config;
  config.system = enpt::parse_system(o.system.value_or("oscillator"));
  config.partition = enpt::parse_scheme(o.partition);
  config.methods.clear();
  for (const auto& m : o.methods) config.methods.push_back(enpt::parse_method(m));
  if (!o.orders.empty()) config.orders = o.orders;
  config.lambdas = grid_from(o, config.system);
  config.n_basis = o.n_basis.value_or(enpt::default_basis(config.system));
  config.target_state = o.target_state;
  if (!o.model_space.empty()) config.model_space = o.model_space;
  config.tol = o.tol;
  if (o.k_max) config.k_max = *o.k_max;

  const auto rows = enpt::run_sweep(config);
  emit(o.out, [&rows](std::ostream& s) { enpt::csv::write_sweep(s, rows); });
  const bool all_failed = std::all_of(rows.begin(), rows.end(),
                                      [](const auto& r) { return !r.error.empty(); });
  return all_failed ? kExitAllFailed : kExitOk;
}

int run_levels(const Options& o) {
  if (o.system.value_or("box") != "box") {
    throw enpt::InvalidArgument("levels is defined for --system box only");
  }
  enpt::LevelsConfig config;
  config.lambdas = grid_from(o, enpt::SystemKind::cosine_box);
  config.n_basis = o.n_basis.value_or(enpt::kDefaultBoxBasis);
  config.levels = o.levels;
  const auto rows = enpt::run_levels(config);
  emit(o.out, [&rows](std::ostream& s) { enpt::csv::write_levels(s, rows); });
  return kExitOk;
}

int run_bench(const Options& o) {
  enpt::BenchConfig config;
  config.system = enpt::parse_system(o.system.value_or("oscillator"));
  if (o.n_basis) config.n_basis = *o.n_basis;
  if (o.k_max) config.k_max = *o.k_max;
  if (o.lambda_min) config.lambda = *o.lambda_min;
  if (!o.orders.empty()) {
    config.max_bw_order = *std::max_element(o.orders.begin(), o.orders.end());
  }
  config.repetitions = o.repetitions;
  const auto rows = enpt::benchmark_order_scaling(config);
  emit(o.out, [&](std::ostream& s) {
    s << "# single-threaded sequential execution; medians of "
      << config.repetitions << " repetitions after warmup; lambda = "
      << enpt::csv::format_double(config.lambda) << '\n';
    enpt::csv::write_bench(s, rows);
  });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]).rfind("--seedless=", 0) == 0) {
      std::cerr << "error: --seedless takes no value\n";
      return kExitConfig;
    }
  }

  CLI::App app{"Perturbation-theory experiments on model quantum systems"};
  app.require_subcommand(1);
  Options o;
  auto* sweep = app.add_subcommand("sweep", "error-vs-lambda sweep");
  auto* levels = app.add_subcommand("levels", "box energy levels vs lambda");
  auto* bench = app.add_subcommand("bench", "per-order cost benchmark");
  for (auto* cmd : {sweep, levels, bench}) add_common(cmd, o);
  levels->add_option("--levels", o.levels, "number of levels");
  bench->add_option("--repetitions", o.repetitions, "timed repetitions (>= 5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*sweep) return run_sweep(o);
    if (*levels) return run_levels(o);
    return run_bench(o);
  } catch (const enpt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
