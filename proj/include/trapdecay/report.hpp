#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "trapdecay/analysis.hpp"
#include "trapdecay/config.hpp"
#include "trapdecay/dynamics.hpp"

namespace trapdecay {

/// Rectangular numeric table; rendered as CSV or as a JSON array of objects
/// keyed by column name.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// 15 significant digits, '.' decimal separator, independent of locale.
std::string format_number(double value);

void write_table(std::ostream& out, const Table& table, OutputFormat format);

/// Columns: t, total, then pop_<j> for j = -N..N ascending (pop_m1, pop_0, pop_p1, ...).
Table simulation_table(const Trajectory<double>& traj);

/// Long format: sweep_value, t, total.
Table sweep_table(const SweepResult<double>& sweep);

/// sweep_value, total_at_probe.
Table sweep_summary_table(const SweepResult<double>& sweep);

Table phase_table(const PhaseReport<double>& report);

std::string level_column(int j);

}  // namespace trapdecay
