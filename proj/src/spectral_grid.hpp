#pragma once

// Real-to-complex FFT between active-set coefficients and uniform samples on
// the p-torus. Internal to the library.

#include "qc/hull_field.hpp"

#include <fftw3.h>

#include <cstddef>
#include <vector>

namespace qc::detail {

class SpectralGrid {
 public:
  SpectralGrid(const ActiveModeSet& modes, int points);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  int points() const { return points_; }
  std::size_t size() const { return real_size_; }

  /// U(phi_j) for all grid nodes; out must hold size() values.
  void synthesize(const Eigen::VectorXcd& coeffs, double* out);
  /// Active-set coefficients of the grid samples (divides by size()).
  void analyze(const double* values, Eigen::VectorXcd& coeffs);

 private:
  struct Gather {
    std::size_t flat;
    bool conjugate;
  };

  int points_;
  std::size_t real_size_;
  std::size_t complex_size_;
  double* real_ = nullptr;
  fftw_complex* spectrum_ = nullptr;
  fftw_plan synth_ = nullptr;
  fftw_plan anal_ = nullptr;
  std::vector<std::pair<std::size_t, std::size_t>> scatter_;  // (mode, flat)
  std::vector<Gather> gather_;
  std::size_t zero_mode_;
};

/// Per-thread cache keyed by (mode set, points).
SpectralGrid& spectral_grid(const ActiveModeSet& modes, int points);

}  // namespace qc::detail
