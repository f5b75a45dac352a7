#include "spectral_grid.hpp"

#include "qc/error.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <memory>
#include <mutex>

namespace qc::detail {

namespace {

// FFTW's planner is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int wrap(int value, int period) { return ((value % period) + period) % period; }

bool lexicographically_positive(const ModeIndex& m) {
  for (Eigen::Index j = 0; j < m.size(); ++j) {
    if (m[j] != 0) return m[j] > 0;
  }
  return false;
}

}  // namespace

SpectralGrid::SpectralGrid(const ActiveModeSet& modes, int points) : points_(points) {
  const int p = modes.rank();
  if (points < 2 * modes.box_half_width() + 1) {
    throw Error(ErrorCode::BadValue, "grid too coarse for the active set");
  }
  const std::size_t half = static_cast<std::size_t>(points / 2 + 1);
  real_size_ = 1;
  complex_size_ = half;
  for (int j = 0; j < p; ++j) real_size_ *= static_cast<std::size_t>(points);
  for (int j = 0; j + 1 < p; ++j) complex_size_ *= static_cast<std::size_t>(points);

  std::vector<std::size_t> stride(static_cast<std::size_t>(p));
  std::size_t s = 1;
  for (int j = p - 1; j >= 0; --j) {
    stride[static_cast<std::size_t>(j)] = s;
    s *= (j == p - 1) ? half : static_cast<std::size_t>(points);
  }
  auto flat_of = [&](const ModeIndex& m) {
    std::size_t f = 0;
    for (int j = 0; j < p; ++j) f += static_cast<std::size_t>(wrap(m[j], points)) * stride[static_cast<std::size_t>(j)];
    return f;
  };

  zero_mode_ = modes.zero_position();
  gather_.resize(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const ModeIndex m = modes.index(i);
    const int last = m[p - 1];
    if (last >= 0) scatter_.emplace_back(i, flat_of(m));
    const bool direct = last > 0 || (last == 0 && (lexicographically_positive(m) || m.isZero()));
    gather_[i] = direct ? Gather{flat_of(m), false} : Gather{flat_of(-m), true};
  }

  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(real_size_);
  spectrum_ = fftw_alloc_complex(complex_size_);
  std::vector<int> dims(static_cast<std::size_t>(p), points);
  synth_ = fftw_plan_dft_c2r(p, dims.data(), spectrum_, real_, FFTW_ESTIMATE);
  anal_ = fftw_plan_dft_r2c(p, dims.data(), real_, spectrum_, FFTW_ESTIMATE);
}

SpectralGrid::~SpectralGrid() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(synth_);
  fftw_destroy_plan(anal_);
  fftw_free(real_);
  fftw_free(spectrum_);
}

void SpectralGrid::synthesize(const Eigen::VectorXcd& coeffs, double* out) {
  std::memset(spectrum_, 0, sizeof(fftw_complex) * complex_size_);
  for (const auto& [mode, flat] : scatter_) {
    const Complex c = coeffs[static_cast<Eigen::Index>(mode)];
    spectrum_[flat][0] = c.real();
    spectrum_[flat][1] = c.imag();
  }
  fftw_execute(synth_);
  std::copy(real_, real_ + real_size_, out);
}

void SpectralGrid::analyze(const double* values, Eigen::VectorXcd& coeffs) {
  std::copy(values, values + real_size_, real_);
  fftw_execute(anal_);
  const double scale = 1.0 / static_cast<double>(real_size_);
  coeffs.resize(static_cast<Eigen::Index>(gather_.size()));
  for (std::size_t i = 0; i < gather_.size(); ++i) {
    const auto& g = gather_[i];
    Complex c(spectrum_[g.flat][0] * scale, spectrum_[g.flat][1] * scale);
    coeffs[static_cast<Eigen::Index>(i)] = g.conjugate ? std::conj(c) : c;
  }
  coeffs[static_cast<Eigen::Index>(zero_mode_)].imag(0.0);
}

SpectralGrid& spectral_grid(const ActiveModeSet& modes, int points) {
  struct Entry {
    std::uint64_t id;
    int points;
    std::unique_ptr<SpectralGrid> grid;
  };
  thread_local std::deque<Entry> cache;
  for (auto& e : cache) {
    if (e.id == modes.id() && e.points == points) return *e.grid;
  }
  if (cache.size() >= 16) cache.pop_back();
  cache.push_front({modes.id(), points, std::make_unique<SpectralGrid>(modes, points)});
  return *cache.front().grid;
}

}  // namespace qc::detail
