#include "trapdecay/report.hpp"

#include <charconv>
#include <cstdlib>

namespace trapdecay {

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 15);
  return std::string(buf, ptr);
}

std::string level_column(int j) {
  if (j == 0) return "pop_0";
  return std::string(j < 0 ? "pop_m" : "pop_p") + std::to_string(std::abs(j));
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
  if (format == OutputFormat::csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
      out << '\n';
    }
    return;
  }
  out << '[';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n  {" : "\n  {");
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? ", \"" : "\"") << table.columns[c] << "\": " << format_number(table.rows[r][c]);
    }
    out << '}';
  }
  out << (table.rows.empty() ? "]\n" : "\n]\n");
}

Table simulation_table(const Trajectory<double>& traj) {
  Table table;
  table.columns = {"t", "total"};
  const int n = traj.half_width();
  for (int j = -n; j <= n; ++j) table.columns.push_back(level_column(j));
  table.rows.reserve(traj.samples());
  for (std::size_t k = 0; k < traj.samples(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    std::vector<double> values{traj.times[k], traj.total(row)};
    for (Eigen::Index c = 0; c < traj.populations.cols(); ++c) {
      values.push_back(traj.populations(row, c));
    }
    table.rows.push_back(std::move(values));
  }
  return table;
}

Table sweep_table(const SweepResult<double>& sweep) {
  Table table{{"sweep_value", "t", "total"}, {}};
  for (std::size_t v = 0; v < sweep.values.size(); ++v) {
    const auto& traj = sweep.trajectories[v];
    for (std::size_t k = 0; k < traj.samples(); ++k) {
      table.rows.push_back({sweep.values[v], traj.times[k], traj.total(static_cast<Eigen::Index>(k))});
    }
  }
  return table;
}

Table sweep_summary_table(const SweepResult<double>& sweep) {
  Table table{{"sweep_value", "total_at_probe"}, {}};
  for (std::size_t v = 0; v < sweep.values.size(); ++v) {
    table.rows.push_back({sweep.values[v], sweep.summary[v]});
  }
  return table;
}

Table phase_table(const PhaseReport<double>& report) {
  return {{"burst_end", "quiescent_rate", "threshold"},
          {{report.burst_end, report.quiescent_rate, report.threshold}}};
}

}  // namespace trapdecay
