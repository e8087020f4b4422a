#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>

#include "trapdecay/error.hpp"
#include "trapdecay/multiplet.hpp"
#include "trapdecay/types.hpp"

namespace trapdecay {

enum class Frame { lab, rotating };

/// Upper-state amplitudes at one instant. The rotating frame is
/// F^(j) = E^(j) exp(-i j omega_bar t); populations are frame independent.
template <typename Real = double>
struct AmplitudeVector {
  ComplexVector<Real> amps;
  Frame frame = Frame::lab;
  Real time = 0;

  int half_width() const { return static_cast<int>(amps.size() / 2); }

  AmplitudeVector in_frame(Frame target, Real omega_bar) const {
    if (target == frame) return *this;
    const Real sign = target == Frame::rotating ? Real(-1) : Real(1);
    const int n = half_width();
    AmplitudeVector out{amps, target, time};
    for (Eigen::Index k = 0; k < amps.size(); ++k) {
      const Real phase = sign * level_label(n, k) * omega_bar * time;
      out.amps(k) *= std::polar(Real(1), phase);
    }
    return out;
  }
};

/// Constant-coefficient generator of the rotating-frame amplitude equations,
/// dF/dt = A F.
template <typename Real = double>
struct Generator {
  ComplexMatrix<Real> matrix;
  std::size_t params_hash = 0;
};

/// Sampled solution. `populations` holds |E^(j)(t_k)|^2 with one row per time
/// and one column per level (ascending j); `total` is the row sum.
template <typename Real = double>
struct Trajectory {
  std::vector<Real> times;
  std::vector<AmplitudeVector<Real>> states;
  RealMatrix<Real> populations;
  RealVector<Real> total;

  std::size_t samples() const { return times.size(); }
  int half_width() const { return static_cast<int>(populations.cols() / 2); }
};

namespace detail {

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

template <typename Real>
std::size_t hash_params(const MultipletParams<Real>& params) {
  std::hash<Real> h;
  std::size_t seed = std::hash<int>{}(params.half_width);
  for (Eigen::Index k = 0; k < params.gamma.size(); ++k) hash_combine(seed, h(params.gamma(k)));
  hash_combine(seed, h(params.omega_bar));
  for (Eigen::Index k = 0; k < params.initial.size(); ++k) {
    hash_combine(seed, h(params.initial(k).real()));
    hash_combine(seed, h(params.initial(k).imag()));
  }
  return seed;
}

// Sequential sum so stored totals and re-derived totals agree bit for bit.
template <typename Real>
Real row_total(const RealMatrix<Real>& populations, Eigen::Index row) {
  Real sum = 0;
  for (Eigen::Index c = 0; c < populations.cols(); ++c) sum += populations(row, c);
  return sum;
}

template <typename Real>
std::pair<RealMatrix<Real>, RealVector<Real>> tabulate_populations(
    const std::vector<AmplitudeVector<Real>>& states, Eigen::Index levels) {
  const auto rows = static_cast<Eigen::Index>(states.size());
  RealMatrix<Real> populations(rows, levels);
  RealVector<Real> total(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < levels; ++c) populations(r, c) = std::norm(states[r].amps(c));
    total(r) = row_total(populations, r);
  }
  return {std::move(populations), std::move(total)};
}

template <typename Real>
Trajectory<Real> assemble(std::vector<Real> times, std::vector<AmplitudeVector<Real>> states,
                          Eigen::Index levels) {
  auto [populations, total] = tabulate_populations(states, levels);
  return {std::move(times), std::move(states), std::move(populations), std::move(total)};
}

template <typename Real>
void check_time_grid(std::span<const Real> times) {
  if (times.empty()) throw Error(ErrorCode::EmptyTimeGrid, "time grid is empty");
  if (!(times.front() >= 0)) {
    throw Error(ErrorCode::NonMonotoneTimeGrid, "time grid must start at t >= 0");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw Error(ErrorCode::NonMonotoneTimeGrid, "time grid must be strictly increasing");
    }
  }
}

}  // namespace detail

/// `samples` equally spaced points covering [0, t_max] inclusive.
template <typename Real = double>
std::vector<Real> uniform_grid(Real t_max, std::size_t samples) {
  if (!(t_max > 0) || samples < 2) {
    throw Error(ErrorCode::InvalidArgument, "uniform grid needs t_max > 0 and >= 2 samples");
  }
  std::vector<Real> grid(samples);
  const auto last = static_cast<Real>(samples - 1);
  for (std::size_t k = 0; k < samples; ++k) grid[k] = t_max * (static_cast<Real>(k) / last);
  return grid;
}

/// A_jj = -gamma_j/2 - i j omega_bar, A_jl = -sqrt(gamma_j gamma_l)/2 for l != j.
/// The Hermitian part is exactly -v v^T / 2 with v_j = sqrt(gamma_j).
template <typename Real>
Generator<Real> build_generator(const MultipletParams<Real>& params) {
  validate(params);
  const Eigen::Index n = params.size();
  const RealVector<Real> v = params.gamma.cwiseSqrt();
  ComplexMatrix<Real> a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) a(j, l) = Complex<Real>(-v(j) * v(l) / 2, 0);
    a(j, j) = Complex<Real>(-params.gamma(j) / 2,
                            -static_cast<Real>(level_label(params.half_width, j)) *
                                params.omega_bar);
  }
  return {std::move(a), detail::hash_params(params)};
}

/// Lab-frame amplitudes at a single time, F(t) = expm(A t) F(0).
template <typename Real>
AmplitudeVector<Real> propagate_at(const Generator<Real>& generator,
                                   const MultipletParams<Real>& params, Real t) {
  const ComplexMatrix<Real> propagator = (generator.matrix * Complex<Real>(t)).exp();
  AmplitudeVector<Real> rotating{propagator * params.initial, Frame::rotating, t};
  return rotating.in_frame(Frame::lab, params.omega_bar);
}

template <typename Real>
AmplitudeVector<Real> propagate_at(const MultipletParams<Real>& params, Real t) {
  if (!(t >= 0)) throw Error(ErrorCode::NonMonotoneTimeGrid, "time must be nonnegative");
  return propagate_at(build_generator(params), params, t);
}

/// Exact propagation on a caller-supplied grid via the matrix exponential of
/// the rotating-frame generator. States are returned in the lab frame.
template <typename Real>
Trajectory<Real> propagate(const MultipletParams<Real>& params, std::span<const Real> times) {
  const Generator<Real> generator = build_generator(params);
  detail::check_time_grid(times);
  std::vector<AmplitudeVector<Real>> states;
  states.reserve(times.size());
  for (Real t : times) states.push_back(propagate_at(generator, params, t));
  return detail::assemble(std::vector<Real>(times.begin(), times.end()), std::move(states),
                          params.size());
}

template <typename Real>
Trajectory<Real> propagate(const MultipletParams<Real>& params, const std::vector<Real>& times) {
  return propagate(params, std::span<const Real>(times));
}

/// Fixed-step classical RK4 on the time-dependent lab-frame equations
///   dE_j/dt = -gamma_j/2 E_j - sum_{l != j} sqrt(gamma_l gamma_j)/2 E_l exp(i (j-l) omega_bar t).
/// Independent of the generator and the matrix exponential; used as an oracle
/// for `propagate`. Uses ceil(t_end/dt) equal steps, recording every step.
template <typename Real>
Trajectory<Real> integrate_lab(const MultipletParams<Real>& params, Real t_end, Real dt) {
  validate(params);
  if (!(dt > 0) || !(t_end > 0)) {
    throw Error(ErrorCode::InvalidArgument, "integrate_lab needs t_end > 0 and dt > 0");
  }
  const int half = params.half_width;
  const Eigen::Index n = params.size();
  const Real fastest = params.gamma.maxCoeff() + half * params.omega_bar;
  if (dt * fastest > Real(0.1)) {
    throw Error(ErrorCode::StepTooLarge, "dt * (max gamma + N omega_bar) exceeds 0.1");
  }

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - Real(1e-9)));
  const Real h = t_end / static_cast<Real>(steps);

  auto rhs = [&](Real t, const ComplexVector<Real>& e) {
    ComplexVector<Real> de(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex<Real> acc = -params.gamma(j) / 2 * e(j);
      for (Eigen::Index l = 0; l < n; ++l) {
        if (l == j) continue;
        const Real cross = std::sqrt(params.gamma(l) * params.gamma(j));
        const Real phase = static_cast<Real>(j - l) * params.omega_bar * t;
        acc -= cross / 2 * e(l) * std::polar(Real(1), phase);
      }
      de(j) = acc;
    }
    return de;
  };

  std::vector<Real> times;
  std::vector<AmplitudeVector<Real>> states;
  times.reserve(steps + 1);
  states.reserve(steps + 1);
  ComplexVector<Real> e = params.initial;
  times.push_back(0);
  states.push_back({e, Frame::lab, 0});
  for (std::size_t s = 0; s < steps; ++s) {
    const Real t = h * static_cast<Real>(s);
    const ComplexVector<Real> k1 = rhs(t, e);
    const ComplexVector<Real> k2 = rhs(t + h / 2, e + (h / 2) * k1);
    const ComplexVector<Real> k3 = rhs(t + h / 2, e + (h / 2) * k2);
    const ComplexVector<Real> k4 = rhs(t + h, e + h * k3);
    e += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    const Real t_next = h * static_cast<Real>(s + 1);
    times.push_back(t_next);
    states.push_back({e, Frame::lab, t_next});
  }
  return detail::assemble(std::move(times), std::move(states), n);
}

/// Re-derives per-level and total populations from the stored amplitudes.
template <typename Real>
std::pair<RealMatrix<Real>, RealVector<Real>> population_series(const Trajectory<Real>& traj) {
  const Eigen::Index levels =
      traj.states.empty() ? traj.populations.cols() : traj.states.front().amps.size();
  return detail::tabulate_populations(traj.states, levels);
}

}  // namespace trapdecay
