#include "enpt/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "enpt/errors.hpp"

namespace enpt::csv {

namespace {

std::string optional_double(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) throw InvalidArgument("bad number '" + text + "'");
  return value;
}

std::optional<double> parse_optional_double(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_double(text);
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_double(r.lambda) << ',' << to_string(r.system) << ','
        << to_string(r.partition) << ',' << to_string(r.method) << ','
        << r.order_or_k << ',' << optional_double(r.energy) << ','
        << optional_double(r.reference) << ',' << optional_double(r.abs_error)
        << ',' << optional_double(r.rel_error) << ','
        << (r.iterations ? std::to_string(*r.iterations) : std::string())
        << ',' << r.wall_time_ns << ',' << r.error << '\n';
  }
}

std::vector<SweepRow> read_sweep(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw InvalidArgument("sweep CSV header mismatch");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != 12) {
      throw InvalidArgument("sweep CSV row has " + std::to_string(f.size()) +
                            " fields: " + line);
    }
    SweepRow r;
    r.lambda = parse_double(f[0]);
    r.system = parse_system(f[1]);
    r.partition = parse_scheme(f[2]);
    r.method = parse_method(f[3]);
    r.order_or_k = std::stoi(f[4]);
    r.energy = parse_optional_double(f[5]);
    r.reference = parse_optional_double(f[6]);
    r.abs_error = parse_optional_double(f[7]);
    r.rel_error = parse_optional_double(f[8]);
    if (!f[9].empty()) r.iterations = std::stoi(f[9]);
    r.wall_time_ns = std::stoll(f[10]);
    r.error = f[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_levels(std::ostream& out, const std::vector<LevelRow>& rows) {
  out << kLevelsHeader << '\n';
  for (const LevelRow& r : rows) {
    out << format_double(r.lambda) << ',' << r.n << ','
        << format_double(r.energy) << '\n';
  }
}

void write_bench(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchHeader << '\n';
  for (const BenchRow& r : rows) {
    out << r.method << ',' << r.order_or_k << ',' << r.n_basis << ','
        << r.wall_time_ns << ',' << r.incremental_time_ns << ','
        << r.repetitions << '\n';
  }
}

}  // namespace enpt::csv
