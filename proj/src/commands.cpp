#include "trapdecay/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>

#include "trapdecay/analysis.hpp"
#include "trapdecay/dynamics.hpp"
#include "trapdecay/report.hpp"

namespace trapdecay {

namespace {

void emit(const std::string& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    fallback.flush();
    if (!fallback) throw Error(ErrorCode::Io, "failed writing to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  write(file);
  file.flush();
  if (!file) throw Error(ErrorCode::Io, "failed writing " + path);
}

int guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_status_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace

int exit_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return kExitIoError;
    case ErrorCode::NoQuiescentPhase: return kExitNoQuiescentPhase;
    default: return kExitConfigError;
  }
}

std::string summary_path(const std::string& path) {
  std::filesystem::path p(path);
  const auto ext = p.extension().string();
  p.replace_extension();
  return p.string() + ".summary" + ext;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto grid = uniform_grid(config.t_max, config.samples);
    const auto traj = propagate(config.params, grid);
    const Table table = simulation_table(traj);
    emit(config.output, out, [&](std::ostream& os) { write_table(os, table, config.format); });
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.sweep) {
      throw Error(ErrorCode::ConfigRange, "sweep requires sweep_param and sweep_values",
                  "sweep_param");
    }
    const auto grid = uniform_grid(config.t_max, config.samples);
    const auto& spec = *config.sweep;
    const SweepResult<double> result =
        spec.parameter == SweepParameter::omega_bar
            ? sweep_omega(config.params, spec.values, grid, spec.probe_time)
            : sweep_gamma_side(config.params, spec.values, grid, spec.probe_time);
    const Table long_table = sweep_table(result);
    const Table summary = sweep_summary_table(result);
    if (config.output.empty()) {
      emit("", out, [&](std::ostream& os) {
        write_table(os, long_table, config.format);
        os << '\n';
        write_table(os, summary, config.format);
      });
    } else {
      emit(config.output, out, [&](std::ostream& os) { write_table(os, long_table, config.format); });
      emit(summary_path(config.output), out,
           [&](std::ostream& os) { write_table(os, summary, config.format); });
    }
  });
}

int cmd_phases(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto grid = uniform_grid(config.t_max, config.samples);
    const auto traj = propagate(config.params, grid);
    // Threshold is a fraction of the central (bare) decay rate.
    const double gamma0 = config.params.gamma_at(0);
    const auto report = detect_phases(traj, config.threshold, gamma0 > 0 ? gamma0 : 1.0);
    const Table table = phase_table(report);
    emit(config.output, out, [&](std::ostream& os) { write_table(os, table, config.format); });
  });
}

}  // namespace trapdecay
