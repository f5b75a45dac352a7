#pragma once

// Holohedries, their frequency modules and the integer action of the group on
// mode indices.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qc {

using ModeIndex = Eigen::VectorXi;

struct GroupElement {
  Eigen::MatrixXd matrix;
  std::string label;
};

/// Finite subgroup of O(d) given by its explicit element list. Element 0 is
/// always the identity. The multiplication table is computed on construction.
class Holohedry {
 public:
  Holohedry(std::string descriptor, int dimension, std::vector<GroupElement> elements);

  const std::string& descriptor() const { return descriptor_; }
  int dimension() const { return dimension_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> find(const Eigen::MatrixXd& matrix, double tol = 1e-10) const;

  /// Index of elements()[i] * elements()[j].
  std::size_t product(std::size_t i, std::size_t j) const { return table_[i * order() + j]; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  std::size_t minus_identity() const { return minus_identity_; }

 private:
  std::string descriptor_;
  int dimension_;
  std::vector<GroupElement> elements_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::size_t minus_identity_ = 0;
};

/// Accepts "cyclic:<q>", "dihedral:<q>" (q even, d = 2) and "icosahedral"
/// (d = 3, order 120, oriented so that a fivefold axis lies along e_x).
Holohedry build_holohedry(std::string_view descriptor);

/// Z-module generated by the H-orbit of a unit vector k0, together with the
/// integer matrices representing H on coefficient vectors.
class FrequencyModule {
 public:
  FrequencyModule(std::shared_ptr<const Holohedry> holohedry, Eigen::VectorXd base_vector,
                  Eigen::MatrixXd generators, std::vector<Eigen::MatrixXi> integer_reps,
                  int relation_bound, double scale = 1.0);

  const Holohedry& holohedry() const { return *holohedry_; }
  const std::shared_ptr<const Holohedry>& holohedry_ptr() const { return holohedry_; }

  int dimension() const { return static_cast<int>(generators_.cols()); }
  int rank() const { return static_cast<int>(generators_.rows()); }
  int relation_bound() const { return relation_bound_; }
  double scale() const { return scale_; }

  /// Unit vector whose orbit generates the module (before scaling).
  const Eigen::VectorXd& base_vector() const { return base_vector_; }
  /// The p x d matrix A; row j is the generator k_j.
  const Eigen::MatrixXd& generators() const { return generators_; }
  /// M_gamma for each group element, in holohedry order.
  const std::vector<Eigen::MatrixXi>& integer_reps() const { return integer_reps_; }

  bool uniformly_discrete() const { return uniformly_discrete_; }

  /// Same integer structure with every wavevector multiplied by factor.
  FrequencyModule scaled(double factor) const;

 private:
  std::shared_ptr<const Holohedry> holohedry_;
  Eigen::VectorXd base_vector_;
  Eigen::MatrixXd generators_;
  std::vector<Eigen::MatrixXi> integer_reps_;
  int relation_bound_;
  double scale_;
  bool uniformly_discrete_;
};

FrequencyModule generate_frequency_module(const Holohedry& holohedry,
                                          const Eigen::VectorXd& base_vector,
                                          int relation_bound = 2);

/// Unique m with |m|_inf <= R and |sum_j m_j k_j - v| < tol, or nullopt.
std::optional<ModeIndex> find_integer_coordinates(const Eigen::MatrixXd& generators,
                                                  const Eigen::VectorXd& v, int bound,
                                                  double tol = 1e-9);

/// Throws NotRepresentable when no bounded-coefficient match exists.
ModeIndex integer_coordinates(const FrequencyModule& module, const Eigen::VectorXd& v,
                              double tol = 1e-9);

Eigen::MatrixXi integer_representation(const FrequencyModule& module, const GroupElement& g);

Eigen::VectorXd mode_wavevector(const FrequencyModule& module, const ModeIndex& m);

struct ModulePoint {
  ModeIndex index;
  Eigen::VectorXd wavevector;
  double norm;
};

/// Bounded-coefficient approximation of L* intersected with B(0, radius):
/// all m with |m|_inf <= bound and |k(m)| <= radius, sorted by |k|.
std::vector<ModulePoint> module_points_in_ball(const FrequencyModule& module, double radius,
                                               int bound);

bool is_uniformly_discrete(const FrequencyModule& module);

/// Number of singular values above threshold.
int real_rank(const Eigen::MatrixXd& matrix, double threshold = 1e-9);

/// Visits every integer vector in [-bound, bound]^dim in lexicographic order.
void for_each_in_box(int dim, int bound, const std::function<void(const ModeIndex&)>& visit);

}  // namespace qc
