#pragma once

// phi_k(z) = sum_j z^j / (j + k)!, the coefficient functions of exponential
// integrators, for real scalars and 2x2 lower-triangular matrices.

#include <Eigen/Dense>

#include <vector>

namespace qc {

/// phi_0 .. phi_kmax at z. Taylor series (8 terms) when |z| < series_threshold,
/// otherwise exp/expm1 and the recurrence phi_{k+1} = (phi_k - 1/k!) / z.
std::vector<double> phi_values(double z, int kmax, double series_threshold = 1e-2);

double phi(int k, double z, double series_threshold = 1e-2);

/// Derivatives of phi_k up to third order, via phi_k' = phi_k - k phi_{k+1}.
struct PhiDerivatives {
  double value, first, second, third;
};
PhiDerivatives phi_derivatives(int k, double z, double series_threshold = 1e-2);

/// Divided difference (phi_k(a) - phi_k(b)) / (a - b), with a Taylor expansion
/// about the midpoint when a and b nearly coincide.
double phi_divided_difference(int k, double a, double b, double series_threshold = 1e-2);

/// phi_k of a 1x1 or 2x2 lower-triangular matrix.
template <int C>
Eigen::Matrix<double, C, C> phi_matrix(int k, const Eigen::Matrix<double, C, C>& z,
                                       double series_threshold = 1e-2) {
  static_assert(C == 1 || C == 2, "only scalar and 2x2 lower-triangular blocks");
  Eigen::Matrix<double, C, C> out = Eigen::Matrix<double, C, C>::Zero();
  if constexpr (C == 1) {
    out(0, 0) = phi(k, z(0, 0), series_threshold);
  } else {
    out(0, 0) = phi(k, z(0, 0), series_threshold);
    out(1, 1) = phi(k, z(1, 1), series_threshold);
    out(1, 0) = z(1, 0) * phi_divided_difference(k, z(0, 0), z(1, 1), series_threshold);
  }
  return out;
}

}  // namespace qc
