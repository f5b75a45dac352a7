#include "qc/phi_functions.hpp"

#include <cmath>

namespace qc {

namespace {

constexpr int kSeriesTerms = 8;
constexpr double kCoincidence = 1e-3;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<double> phi_values(double z, int kmax, double series_threshold) {
  std::vector<double> out(static_cast<std::size_t>(kmax + 1));
  if (std::abs(z) < series_threshold) {
    for (int k = 0; k <= kmax; ++k) {
      // Horner on sum_{j<8} z^j / (j+k)!
      double acc = 0.0;
      for (int j = kSeriesTerms - 1; j >= 0; --j) acc = acc * z + 1.0 / factorial(j + k);
      out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
  }
  // Each recurrence step cancels against 1/k! and divides by z; extended
  // precision keeps phi_3 near the threshold at full double accuracy.
  const long double zl = z;
  long double cur = std::expm1(zl) / zl;
  long double fact = 1.0L;
  out[0] = std::exp(z);
  if (kmax >= 1) out[1] = static_cast<double>(cur);
  for (int k = 1; k < kmax; ++k) {
    fact *= k;
    cur = (cur - 1.0L / fact) / zl;
    out[static_cast<std::size_t>(k + 1)] = static_cast<double>(cur);
  }
  return out;
}

double phi(int k, double z, double series_threshold) {
  return phi_values(z, k, series_threshold)[static_cast<std::size_t>(k)];
}

PhiDerivatives phi_derivatives(int k, double z, double series_threshold) {
  const auto p = phi_values(z, k + 3, series_threshold);
  const double kk = k;
  const auto at = [&](int j) { return p[static_cast<std::size_t>(k + j)]; };
  return {at(0),
          at(0) - kk * at(1),
          at(0) - 2.0 * kk * at(1) + kk * (kk + 1.0) * at(2),
          at(0) - 3.0 * kk * at(1) + 3.0 * kk * (kk + 1.0) * at(2) - kk * (kk + 1.0) * (kk + 2.0) * at(3)};
}

double phi_divided_difference(int k, double a, double b, double series_threshold) {
  const double gap = a - b;
  if (std::abs(gap) < kCoincidence) {
    const auto d = phi_derivatives(k, 0.5 * (a + b), series_threshold);
    return d.first + gap * gap / 24.0 * d.third;
  }
  return (phi(k, a, series_threshold) - phi(k, b, series_threshold)) / gap;
}

}  // namespace qc
