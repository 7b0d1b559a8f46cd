#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/sweep.hpp"

namespace pinch {

inline constexpr std::string_view kCsvHeader =
    "sweep_value,scheme,avg_latency_s,avg_sum_rate_bps,n_states,n_infeasible,seed,wall_time_s";

/// Rows as CSV text: the fixed header, floats at 9 significant digits, '\n'
/// line ends. Two standard-error columns follow when any row averages more
/// than one layout.
std::string format_csv(std::span<const SweepRow> rows);

/// Throws std::invalid_argument for an empty row set and std::runtime_error
/// when the file cannot be written.
void write_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);

/// Reads text produced by format_csv.
std::vector<SweepRow> parse_csv(std::string_view text);

}  // namespace pinch
