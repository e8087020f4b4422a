#pragma once

#include <complex>

#include <Eigen/Core>

namespace trapdecay {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using ComplexMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

// Multiplet levels are labelled j = -N..N and stored at index j + N.
constexpr Eigen::Index level_index(int half_width, int j) { return j + half_width; }
constexpr int level_label(int half_width, Eigen::Index k) {
  return static_cast<int>(k) - half_width;
}

}  // namespace trapdecay
