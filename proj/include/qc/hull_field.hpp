#pragma once

// Truncated hull functions U on the p-torus: u(x) = U(Ax) = sum_m a_m e^{i k(m).x}.

#include "qc/symmetry_lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

namespace qc {

using Complex = std::complex<double>;

/// Maximal H-invariant subset of {|m|_inf <= N} intersected with {|k(m)| <= K_max},
/// stored in lexicographic index order.
class ActiveModeSet {
 public:
  static std::shared_ptr<const ActiveModeSet> create(std::shared_ptr<const FrequencyModule> module,
                                                     int box_half_width,
                                                     double wavenumber_cap = std::numeric_limits<double>::infinity());

  const FrequencyModule& module() const { return *module_; }
  const std::shared_ptr<const FrequencyModule>& module_ptr() const { return module_; }
  int box_half_width() const { return box_; }
  double wavenumber_cap() const { return cap_; }
  int rank() const { return module_->rank(); }
  std::size_t size() const { return static_cast<std::size_t>(indices_.cols()); }
  std::uint64_t id() const { return id_; }

  /// p x n matrix; column i is the i-th active index.
  const Eigen::MatrixXi& indices() const { return indices_; }
  ModeIndex index(std::size_t i) const { return indices_.col(static_cast<Eigen::Index>(i)); }
  std::optional<std::size_t> position(const ModeIndex& m) const;
  std::size_t zero_position() const { return zero_; }
  std::size_t negation(std::size_t i) const { return negation_[i]; }

  /// |k(m)|^2, identical across each H-orbit.
  const Eigen::VectorXd& wavenumber_sq() const { return ksq_; }
  /// |m|^2 (Euclidean norm of the integer index).
  const Eigen::VectorXd& index_norm_sq() const { return msq_; }
  /// Wavevectors k(m), d x n.
  const Eigen::MatrixXd& wavevectors() const { return wavevectors_; }

  /// action(g)[i] is the position of M_g m_i.
  const std::vector<std::size_t>& action(std::size_t g) const { return action_[g]; }

 private:
  ActiveModeSet() = default;

  std::shared_ptr<const FrequencyModule> module_;
  int box_ = 0;
  double cap_ = 0.0;
  std::uint64_t id_ = 0;
  Eigen::MatrixXi indices_;
  std::vector<std::int64_t> lookup_;
  std::size_t zero_ = 0;
  std::vector<std::size_t> negation_;
  Eigen::VectorXd ksq_;
  Eigen::VectorXd msq_;
  Eigen::MatrixXd wavevectors_;
  std::vector<std::vector<std::size_t>> action_;
};

using ModeSetPtr = std::shared_ptr<const ActiveModeSet>;

class HullField {
 public:
  explicit HullField(ModeSetPtr modes);
  HullField(ModeSetPtr modes, Eigen::VectorXcd coefficients, bool symmetric = false);

  const ActiveModeSet& modes() const { return *modes_; }
  const ModeSetPtr& modes_ptr() const { return modes_; }
  const FrequencyModule& module() const { return modes_->module(); }

  const Eigen::VectorXcd& coefficients() const { return coeffs_; }
  Eigen::VectorXcd& coefficients() { return coeffs_; }

  bool symmetric() const { return symmetric_; }
  void set_symmetric(bool flag) { symmetric_ = flag; }

  /// Writes value at m and its conjugate at -m. Throws InactiveMode.
  void set(const ModeIndex& m, Complex value);
  Complex get(const ModeIndex& m) const;

  HullField& operator+=(const HullField& other);
  HullField& operator-=(const HullField& other);
  HullField& operator*=(double factor);

 private:
  ModeSetPtr modes_;
  Eigen::VectorXcd coeffs_;
  bool symmetric_ = false;
};

HullField operator+(HullField a, const HullField& b);
HullField operator-(HullField a, const HullField& b);
HullField operator*(double factor, HullField a);

/// Zero field on the maximal invariant truncation. Throws EmptyActiveSet when
/// N > 0 was requested but only the zero mode survives.
HullField make_field(std::shared_ptr<const FrequencyModule> module, int box_half_width,
                     double wavenumber_cap = std::numeric_limits<double>::infinity());

/// Orthogonal projection onto H-invariant fields: a_m <- mean_g a_{M_g m}.
HullField symmetrize(const HullField& field);

/// max_g max_m |a_{M_g m} - a_m|.
double symmetry_drift(const HullField& field);
/// max_m |a_{-m} - conj(a_m)|.
double hermitian_defect(const HullField& field);

double l2_norm(const HullField& field);
double l1_norm(const HullField& field);
double hs_norm(const HullField& field, double s);
/// sum_i ||d U / d phi_i||^2 = sum_m |m|^2 |a_m|^2.
double grad_hull_sq(const HullField& field);

/// C(s) = (sum_active (|m|^2 + 1)^(-s))^(1/2), so that l1 <= C * H^s on this set.
double l1_hs_bound_constant(const ActiveModeSet& modes, double s);

/// Re sum a_m conj(b_m).
double inner_l2(const HullField& f, const HullField& g);

/// Points per axis of the padded grid used for products (padding * (2N + 1)).
int dealias_points(const ActiveModeSet& modes, int padding = 2);

/// Samples U on the uniform grid with `points` nodes per axis (row-major, last
/// axis fastest). Requires points >= 2N + 1.
Eigen::ArrayXd grid_values(const HullField& field, int points);
/// Projects grid samples back onto the active set (exact for band-limited data).
HullField from_grid(const Eigen::ArrayXd& values, const ModeSetPtr& modes, int points);

/// Product of two fields restricted to the active set, evaluated on a padded grid.
HullField pointwise_product(const HullField& f, const HullField& g, int padding = 2);
/// f*g*h restricted to the active set in one padded-grid pass (exact when
/// padding * (2N + 1) >= 4N + 1, which holds for padding >= 2).
HullField triple_product(const HullField& f, const HullField& g, const HullField& h,
                         int padding = 2);

/// P_lambda(u) = 1/2 ||(Delta+1)u||^2 - lambda/2 ||u||^2 + 1/4 ||u^2||^2.
double energy(const HullField& field, double lambda, int padding = 2);

/// u(x) by direct summation for each column of points (d x n).
Eigen::VectorXd evaluate_physical(const HullField& field, const Eigen::MatrixXd& points);

struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, row 0 at y = hi
};

/// Grayscale image of u over [lo, hi]^2 (d = 2 only).
Raster render_image(const HullField& field, double lo, double hi, int resolution);

/// Active indices with |a_m| > eps.
std::vector<ModeIndex> support_set(const HullField& field, double eps);

struct ConditionIIIResult {
  bool passed = false;
  int coefficient_bound = 0;
  std::size_t ball_points = 0;
  std::vector<ModulePoint> uncovered;
};

/// Whether the support at level eps is r-dense in the bounded-coefficient
/// enumeration of L* within B(0, M). Throws BallExceedsTruncation if M > K_max.
ConditionIIIResult condition_iii_check(const HullField& field, double radius, double r,
                                       double eps);

/// (max - min) / 2 of U over a uniform torus grid; the best constant is the midrange.
double separation_from_constants(const HullField& field, int grid_resolution);

struct GridRange {
  double min = 0.0;
  double max = 0.0;
};
GridRange grid_range(const HullField& field, int grid_resolution);

}  // namespace qc
