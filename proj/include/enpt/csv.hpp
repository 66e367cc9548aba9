#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "enpt/experiment.hpp"

namespace enpt::csv {

inline constexpr const char* kSweepHeader =
    "lambda,system,partition,method,order_or_k,energy,reference,abs_error,"
    "rel_error,iterations,wall_time_ns,error";
inline constexpr const char* kLevelsHeader = "lambda,n,energy";
inline constexpr const char* kBenchHeader =
    "method,order_or_k,n_basis,wall_time_ns,incremental_time_ns,repetitions";

/// 17 significant digits, so values read back bit-identical.
std::string format_double(double value);

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep(std::istream& in);

void write_levels(std::ostream& out, const std::vector<LevelRow>& rows);
void write_bench(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace enpt::csv
