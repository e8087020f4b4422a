#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <span>
#include <string_view>
#include <vector>

#include "trapdecay/dynamics.hpp"
#include "trapdecay/error.hpp"
#include "trapdecay/multiplet.hpp"

namespace trapdecay {

/// Burst/quiescent split of a decay curve. Times are in units of 1/gamma0 and
/// rates in units of gamma0.
template <typename Real = double>
struct PhaseReport {
  Real burst_end = 0;
  Real quiescent_rate = 0;
  Real threshold = 0;
};

enum class SweepParameter { omega_bar, gamma_side };

constexpr std::string_view to_string(SweepParameter p) {
  return p == SweepParameter::omega_bar ? "omega_bar" : "gamma_side";
}

template <typename Real = double>
struct SweepResult {
  SweepParameter parameter = SweepParameter::omega_bar;
  std::vector<Real> values;
  std::vector<Trajectory<Real>> trajectories;
  // Total population at probe_time, one entry per value.
  std::vector<Real> summary;
  Real probe_time = 0;
};

/// Long-time population for degenerate levels (omega_bar = 0). The generator
/// is then -v v^T / 2, so only the component of E(0) along v decays:
///   Pi_inf = |E0|^2 - |v . E0|^2 / |v|^2.
template <typename Real>
Real trapped_fraction(const MultipletParams<Real>& params) {
  validate(params);
  if (params.omega_bar != 0) {
    throw Error(ErrorCode::NonDegenerate, "trapped_fraction requires omega_bar = 0");
  }
  const RealVector<Real> v = params.gamma.cwiseSqrt();
  const Real v_norm2 = v.squaredNorm();
  if (v_norm2 == 0) throw Error(ErrorCode::AllRatesZero, "no level decays");
  const Complex<Real> bright = (v.template cast<Complex<Real>>().transpose() * params.initial)(0);
  return params.initial.squaredNorm() - std::norm(bright) / v_norm2;
}

/// Splits a decay curve into a burst phase and a quiescent phase.
///
/// The instantaneous rate r = -d ln(Pi)/dt is taken by centred differences on
/// the sample grid. The burst ends at the first sample where r drops below
/// threshold * reference_rate and stays there for the next 10 samples. The
/// quiescent rate is the least-squares slope of -ln(Pi) from there to the end.
/// Throws NoQuiescentPhase when no such sample exists or when the fitted rate
/// is not below the threshold.
template <typename Real>
PhaseReport<Real> detect_phases(const Trajectory<Real>& traj, Real threshold,
                                Real reference_rate = 1) {
  constexpr std::size_t persistence = 10;
  if (!(threshold > 0) || !(reference_rate > 0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold and reference rate must be positive");
  }
  if (traj.samples() < 100 || traj.times.front() > 0 ||
      traj.times.back() < Real(10) / reference_rate) {
    throw Error(ErrorCode::InvalidArgument,
                "phase detection needs >= 100 samples covering [0, 10/gamma0]");
  }

  // Stop at the first sample whose population underflowed.
  std::size_t usable = 0;
  while (usable < traj.samples() && traj.total(usable) > 0 && std::isnormal(traj.total(usable))) {
    ++usable;
  }
  if (usable < persistence + 2) {
    throw Error(ErrorCode::NoQuiescentPhase, "population vanished before any quiescent phase");
  }

  std::vector<Real> log_pop(usable);
  for (std::size_t k = 0; k < usable; ++k) log_pop[k] = std::log(traj.total(k));
  const auto& t = traj.times;
  std::vector<Real> rate(usable);
  rate.front() = -(log_pop[1] - log_pop[0]) / (t[1] - t[0]);
  rate.back() = -(log_pop[usable - 1] - log_pop[usable - 2]) / (t[usable - 1] - t[usable - 2]);
  for (std::size_t k = 1; k + 1 < usable; ++k) {
    rate[k] = -(log_pop[k + 1] - log_pop[k - 1]) / (t[k + 1] - t[k - 1]);
  }

  const Real cutoff = threshold * reference_rate;
  std::size_t start = usable;
  for (std::size_t k = 0; k + persistence < usable; ++k) {
    bool below = true;
    for (std::size_t m = k; m <= k + persistence && below; ++m) below = rate[m] < cutoff;
    if (below) {
      start = k;
      break;
    }
  }
  if (start == usable) {
    throw Error(ErrorCode::NoQuiescentPhase, "decay rate never stays below the threshold");
  }

  const auto count = static_cast<Real>(usable - start);
  Real t_mean = 0;
  Real y_mean = 0;
  for (std::size_t k = start; k < usable; ++k) {
    t_mean += t[k];
    y_mean -= log_pop[k];
  }
  t_mean /= count;
  y_mean /= count;
  Real sxy = 0;
  Real sxx = 0;
  for (std::size_t k = start; k < usable; ++k) {
    const Real dt = t[k] - t_mean;
    sxy += dt * (-log_pop[k] - y_mean);
    sxx += dt * dt;
  }
  // Nonnegative up to roundoff on a flat tail.
  const Real slope = std::max(Real(0), sxy / sxx);
  if (!(slope < cutoff)) {
    throw Error(ErrorCode::NoQuiescentPhase, "fitted tail rate is not below the threshold");
  }
  return {t[start], slope, threshold};
}

namespace detail {

template <typename Real, typename MakeParams>
SweepResult<Real> run_sweep(SweepParameter parameter, std::span<const Real> values,
                            std::span<const Real> times, Real probe_time, MakeParams make) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one value");
  for (Real v : values) {
    if (!(v >= 0)) throw Error(ErrorCode::InvalidArgument, "sweep values must be nonnegative");
  }
  if (!(probe_time >= 0)) throw Error(ErrorCode::InvalidArgument, "probe time must be >= 0");

  struct Point {
    Trajectory<Real> trajectory;
    Real probe;
  };
  std::vector<std::future<Point>> pending;
  pending.reserve(values.size());
  for (Real v : values) {
    pending.push_back(std::async(std::launch::async, [&make, times, probe_time, v] {
      const MultipletParams<Real> params = validate(make(v));
      const AmplitudeVector<Real> at_probe = propagate_at(params, probe_time);
      return Point{propagate(params, times), at_probe.amps.squaredNorm()};
    }));
  }

  SweepResult<Real> result;
  result.parameter = parameter;
  result.values.assign(values.begin(), values.end());
  result.probe_time = probe_time;
  for (auto& f : pending) {
    Point p = f.get();
    result.trajectories.push_back(std::move(p.trajectory));
    result.summary.push_back(p.probe);
  }
  return result;
}

}  // namespace detail

/// One trajectory per drive frequency, everything else taken from `base`.
template <typename Real>
SweepResult<Real> sweep_omega(const MultipletParams<Real>& base, std::span<const Real> omegas,
                              std::span<const Real> times, Real probe_time) {
  validate(base);
  return detail::run_sweep<Real>(SweepParameter::omega_bar, omegas, times, probe_time,
                                 [&base](Real omega) {
                                   MultipletParams<Real> p = base;
                                   p.omega_bar = omega;
                                   return p;
                                 });
}

/// One trajectory per side rate; the value is applied to every level j != 0.
template <typename Real>
SweepResult<Real> sweep_gamma_side(const MultipletParams<Real>& base,
                                   std::span<const Real> gammas, std::span<const Real> times,
                                   Real probe_time) {
  validate(base);
  return detail::run_sweep<Real>(SweepParameter::gamma_side, gammas, times, probe_time,
                                 [&base](Real g) {
                                   MultipletParams<Real> p = base;
                                   for (Eigen::Index k = 0; k < p.gamma.size(); ++k) {
                                     if (k != p.half_width) p.gamma(k) = g;
                                   }
                                   return p;
                                 });
}

template <typename Real>
SweepResult<Real> sweep_omega(const MultipletParams<Real>& base, const std::vector<Real>& omegas,
                              const std::vector<Real>& times, Real probe_time) {
  return sweep_omega(base, std::span<const Real>(omegas), std::span<const Real>(times),
                     probe_time);
}

template <typename Real>
SweepResult<Real> sweep_gamma_side(const MultipletParams<Real>& base,
                                   const std::vector<Real>& gammas,
                                   const std::vector<Real>& times, Real probe_time) {
  return sweep_gamma_side(base, std::span<const Real>(gammas), std::span<const Real>(times),
                          probe_time);
}

}  // namespace trapdecay
