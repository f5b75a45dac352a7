#pragma once

#include "qc/hull_field.hpp"
#include "qc/symmetry_lattice.hpp"

#include <complex>
#include <memory>
#include <random>
#include <string>

namespace testing {

inline std::shared_ptr<const qc::FrequencyModule> module_for(const std::string& symmetry) {
  auto h = std::make_shared<const qc::Holohedry>(qc::build_holohedry(symmetry));
  return std::make_shared<const qc::FrequencyModule>(
      qc::generate_frequency_module(*h, Eigen::VectorXd::Unit(h->dimension(), 0)));
}

inline qc::ModeSetPtr modes_for(const std::string& symmetry, int N,
                                double cap = std::numeric_limits<double>::infinity()) {
  return qc::ActiveModeSet::create(module_for(symmetry), N, cap);
}

inline qc::ModeIndex idx(std::initializer_list<int> values) {
  qc::ModeIndex m(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (int v : values) m[i++] = v;
  return m;
}

/// Hermitian field with independent uniform entries in [-1, 1] + i[-1, 1].
inline qc::HullField random_field(const qc::ModeSetPtr& modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  qc::HullField f(modes);
  for (std::size_t i = 0; i < modes->size(); ++i) {
    const qc::ModeIndex m = modes->index(i);
    const auto neg = modes->negation(i);
    if (neg < i) continue;
    if (neg == i) {
      f.set(m, d(rng));
    } else {
      const double re = d(rng);
      f.set(m, qc::Complex(re, d(rng)));
    }
  }
  return f;
}

/// Direct product of two coefficient sets restricted to the active set.
inline qc::HullField direct_product(const qc::HullField& f, const qc::HullField& g) {
  const auto& modes = f.modes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(modes.size()));
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const qc::ModeIndex sum = modes.index(i) + modes.index(j);
      if (auto pos = modes.position(sum)) {
        out[static_cast<Eigen::Index>(*pos)] +=
            f.coefficients()[static_cast<Eigen::Index>(i)] * g.coefficients()[static_cast<Eigen::Index>(j)];
      }
    }
  }
  return qc::HullField(f.modes_ptr(), out);
}

}  // namespace testing
