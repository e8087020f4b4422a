#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "trapdecay/error.hpp"
#include "trapdecay/types.hpp"

namespace trapdecay {

/// Physical description of the low-frequency drive. All rates are in units of
/// the bare decay rate, so gamma0 is usually 1.
template <typename Real = double>
struct DrivingFieldSpec {
  Real gamma0 = 1;
  // gbar[i-1] is the i-photon coupling amplitude; its length fixes N.
  std::vector<Complex<Real>> gbar;
  Real n_photons = 1;
  bool exact_ladder = false;

  int half_width() const { return static_cast<int>(gbar.size()); }
};

/// One simulation point: the (2N+1)-level upper multiplet with per-level decay
/// rates, drive frequency and initial amplitudes. Cross rates sqrt(g_l g_j) are
/// always derived from `gamma`, never stored.
template <typename Real = double>
struct MultipletParams {
  int half_width = 0;
  RealVector<Real> gamma;
  Real omega_bar = 0;
  ComplexVector<Real> initial;

  Eigen::Index size() const { return 2 * static_cast<Eigen::Index>(half_width) + 1; }

  Real gamma_at(int j) const { return gamma(level_index(half_width, j)); }

  /// Everything in the central level, E^(0)(0) = 1.
  static ComplexVector<Real> central_state(int half_width) {
    ComplexVector<Real> e = ComplexVector<Real>::Zero(2 * half_width + 1);
    e(half_width) = Complex<Real>(1);
    return e;
  }

  static MultipletParams with_central_state(int half_width, RealVector<Real> gamma,
                                            Real omega_bar) {
    return {half_width, std::move(gamma), omega_bar, central_state(half_width)};
  }
};

/// Returns `params` unchanged when every invariant holds, otherwise throws
/// NegativeRate, ShapeMismatch or UnphysicalInitialNorm.
template <typename Real>
MultipletParams<Real> validate(const MultipletParams<Real>& params) {
  if (params.half_width < 0) {
    throw Error(ErrorCode::ShapeMismatch, "half_width must be nonnegative");
  }
  const Eigen::Index n = params.size();
  if (params.gamma.size() != n) {
    throw Error(ErrorCode::ShapeMismatch,
                "gamma has " + std::to_string(params.gamma.size()) + " entries, expected " +
                    std::to_string(n));
  }
  if (params.initial.size() != n) {
    throw Error(ErrorCode::ShapeMismatch,
                "initial has " + std::to_string(params.initial.size()) + " entries, expected " +
                    std::to_string(n));
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(params.gamma(k) >= 0) || !std::isfinite(params.gamma(k))) {
      throw Error(ErrorCode::NegativeRate,
                  "gamma at level " + std::to_string(level_label(params.half_width, k)) +
                      " is not a finite nonnegative rate");
    }
  }
  if (!(params.omega_bar >= 0) || !std::isfinite(params.omega_bar)) {
    throw Error(ErrorCode::InvalidArgument, "omega_bar must be finite and nonnegative");
  }
  // A normalised random state can land a few ulps above one.
  const Real norm = params.initial.squaredNorm();
  const Real slack = 8 * std::numeric_limits<Real>::epsilon();
  if (!(norm > 0) || norm > 1 + slack) {
    throw Error(ErrorCode::UnphysicalInitialNorm, "initial population must lie in (0, 1]");
  }
  return params;
}

/// Per-level decay rates j = -N..N for a flat vacuum mode density.
///
/// With the strong-field approximation (exact_ladder = false) the i-photon side
/// levels both get gamma0 |gbar_i|^2 n^i. The exact ladder uses the squared
/// creation/annihilation factors: n(n-1)...(n-i+1) below, (n+1)...(n+i) above.
template <typename Real>
RealVector<Real> effective_rates(const DrivingFieldSpec<Real>& spec) {
  if (!(spec.gamma0 >= 0)) {
    throw Error(ErrorCode::NegativeRate, "gamma0 must be nonnegative");
  }
  if (!(spec.n_photons > 0)) {
    throw Error(ErrorCode::UnphysicalPhotonNumber, "n_photons must be positive");
  }
  const int order = spec.half_width();
  // n(n-1)...(n-N+1) stops being a sensible rate once n < N.
  if (spec.exact_ladder && order >= 2 && spec.n_photons < order) {
    throw Error(ErrorCode::UnphysicalPhotonNumber,
                "exact ladder of order " + std::to_string(order) + " needs n_photons >= " +
                    std::to_string(order));
  }

  RealVector<Real> rates(2 * order + 1);
  rates(order) = spec.gamma0;
  const Real n = spec.n_photons;
  Real lower = 1;
  Real upper = 1;
  for (int i = 1; i <= order; ++i) {
    if (spec.exact_ladder) {
      lower *= n - (i - 1);
      upper *= n + i;
    } else {
      lower *= n;
      upper = lower;
    }
    const Real coupling = spec.gamma0 * std::norm(spec.gbar[i - 1]);
    rates(order - i) = coupling * lower;
    rates(order + i) = coupling * upper;
  }
  return rates;
}

}  // namespace trapdecay
