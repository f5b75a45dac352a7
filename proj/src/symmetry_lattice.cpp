#include "qc/symmetry_lattice.hpp"

#include "qc/error.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace qc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OddOrderNoMinusI: return "OddOrderNoMinusI";
    case ErrorCode::UnknownSpec: return "UnknownSpec";
    case ErrorCode::RelationSearchExhausted: return "RelationSearchExhausted";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::EmptyActiveSet: return "EmptyActiveSet";
    case ErrorCode::InactiveMode: return "InactiveMode";
    case ErrorCode::ImaginaryResidue: return "ImaginaryResidue";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::BallExceedsTruncation: return "BallExceedsTruncation";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::NeverEnters: return "NeverEnters";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::CorruptPayload: return "CorruptPayload";
    case ErrorCode::ManifestMismatch: return "ManifestMismatch";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

constexpr double kClosureTol = 1e-10;
constexpr double kConstructionTol = 1e-9;

Eigen::Matrix2d rotation2(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

std::vector<GroupElement> planar_group(int q, bool with_reflections) {
  std::vector<GroupElement> out;
  const double step = 2.0 * std::numbers::pi / q;
  for (int k = 0; k < q; ++k) {
    out.push_back({rotation2(step * k), "r" + std::to_string(k)});
  }
  if (with_reflections) {
    Eigen::Matrix2d s;
    s << 1.0, 0.0, 0.0, -1.0;
    for (int k = 0; k < q; ++k) {
      out.push_back({rotation2(step * k) * s, "s" + std::to_string(k)});
    }
  }
  return out;
}

// Closes a generating set under multiplication, breadth first from the identity.
std::vector<GroupElement> close_group(const std::vector<Eigen::MatrixXd>& generators, int dim) {
  std::vector<GroupElement> out;
  out.push_back({Eigen::MatrixXd::Identity(dim, dim), "e"});
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : generators) {
      Eigen::MatrixXd candidate = out[head].matrix * g;
      const bool known = std::any_of(out.begin(), out.end(), [&](const GroupElement& e) {
        return (e.matrix - candidate).cwiseAbs().maxCoeff() < kClosureTol;
      });
      if (!known) {
        out.push_back({candidate, "g" + std::to_string(out.size())});
      }
      if (out.size() > 10000) throw Error(ErrorCode::UnknownSpec, "group closure diverged");
    }
  }
  return out;
}

std::vector<GroupElement> icosahedral_group() {
  const double phi = std::numbers::phi;
  const Eigen::Vector3d vertex = Eigen::Vector3d(0.0, 1.0, phi).normalized();
  const Eigen::Vector3d face = Eigen::Vector3d(1.0, 1.0, 1.0).normalized();
  const Eigen::Matrix3d five = Eigen::AngleAxisd(2.0 * std::numbers::pi / 5.0, vertex).toRotationMatrix();
  const Eigen::Matrix3d three = Eigen::AngleAxisd(2.0 * std::numbers::pi / 3.0, face).toRotationMatrix();
  // Orient a fivefold axis along e_x.
  const Eigen::Matrix3d q =
      Eigen::Quaterniond::FromTwoVectors(vertex, Eigen::Vector3d::UnitX()).toRotationMatrix();
  std::vector<Eigen::MatrixXd> gens = {q * five * q.transpose(), q * three * q.transpose(),
                                       -Eigen::Matrix3d::Identity()};
  return close_group(gens, 3);
}

int parse_order(std::string_view text, std::string_view descriptor) {
  int q = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
  if (ec != std::errc() || ptr != text.data() + text.size() || q <= 0) {
    throw Error(ErrorCode::UnknownSpec, std::string(descriptor));
  }
  return q;
}

// Depth-first enumeration of sum_j m_j g_j over the coefficient box.
void search_box(const Eigen::MatrixXd& gens, const Eigen::VectorXd& target, int bound, double tol,
                int j, ModeIndex& m, Eigen::VectorXd& partial, std::optional<ModeIndex>& best,
                double& best_residual) {
  if (j == gens.rows()) {
    const double residual = (partial - target).norm();
    if (residual < tol && residual < best_residual) {
      best_residual = residual;
      best = m;
    }
    return;
  }
  for (int c = -bound; c <= bound; ++c) {
    m[j] = c;
    Eigen::VectorXd next = partial + c * gens.row(j).transpose();
    search_box(gens, target, bound, tol, j + 1, m, next, best, best_residual);
  }
}

}  // namespace

Holohedry::Holohedry(std::string descriptor, int dimension, std::vector<GroupElement> elements)
    : descriptor_(std::move(descriptor)), dimension_(dimension), elements_(std::move(elements)) {
  const std::size_t n = elements_.size();
  table_.resize(n * n);
  inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto k = find(elements_[i].matrix * elements_[j].matrix);
      if (!k) throw Error(ErrorCode::UnknownSpec, "element list is not closed under products");
      table_[i * n + j] = *k;
      if (*k == 0) inverse_[i] = j;
    }
  }
  auto minus = find(-Eigen::MatrixXd::Identity(dimension_, dimension_));
  if (!minus) throw Error(ErrorCode::OddOrderNoMinusI, descriptor_ + " does not contain -I");
  minus_identity_ = *minus;
}

std::optional<std::size_t> Holohedry::find(const Eigen::MatrixXd& matrix, double tol) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if ((elements_[i].matrix - matrix).cwiseAbs().maxCoeff() < tol) return i;
  }
  return std::nullopt;
}

Holohedry build_holohedry(std::string_view descriptor) {
  const std::string text(descriptor);
  if (descriptor == "icosahedral") {
    return Holohedry(text, 3, icosahedral_group());
  }
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::UnknownSpec, text);
  const auto family = descriptor.substr(0, colon);
  if (family != "cyclic" && family != "dihedral") throw Error(ErrorCode::UnknownSpec, text);
  const int q = parse_order(descriptor.substr(colon + 1), descriptor);
  if (q % 2 != 0) {
    throw Error(ErrorCode::OddOrderNoMinusI, text + ": odd order groups do not contain -I");
  }
  return Holohedry(text, 2, planar_group(q, family == "dihedral"));
}

FrequencyModule::FrequencyModule(std::shared_ptr<const Holohedry> holohedry,
                                 Eigen::VectorXd base_vector, Eigen::MatrixXd generators,
                                 std::vector<Eigen::MatrixXi> integer_reps, int relation_bound,
                                 double scale)
    : holohedry_(std::move(holohedry)),
      base_vector_(std::move(base_vector)),
      generators_(std::move(generators)),
      integer_reps_(std::move(integer_reps)),
      relation_bound_(relation_bound),
      scale_(scale),
      uniformly_discrete_(real_rank(generators_ / scale_) == generators_.rows()) {}

FrequencyModule FrequencyModule::scaled(double factor) const {
  return FrequencyModule(holohedry_, base_vector_, generators_ * factor, integer_reps_,
                         relation_bound_, scale_ * factor);
}

std::optional<ModeIndex> find_integer_coordinates(const Eigen::MatrixXd& generators,
                                                  const Eigen::VectorXd& v, int bound,
                                                  double tol) {
  ModeIndex m = ModeIndex::Zero(generators.rows());
  Eigen::VectorXd partial = Eigen::VectorXd::Zero(v.size());
  std::optional<ModeIndex> best;
  double best_residual = tol;
  search_box(generators, v, bound, tol, 0, m, partial, best, best_residual);
  return best;
}

FrequencyModule generate_frequency_module(const Holohedry& holohedry,
                                          const Eigen::VectorXd& base_vector,
                                          int relation_bound) {
  if (base_vector.size() != holohedry.dimension()) {
    throw Error(ErrorCode::BadValue, "base vector dimension does not match the holohedry");
  }
  if (std::abs(base_vector.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::BadValue, "base vector must have unit length");
  }
  if (relation_bound < 2) throw Error(ErrorCode::BadValue, "relation bound must be >= 2");

  const int d = holohedry.dimension();
  Eigen::MatrixXd chosen(0, d);
  for (const auto& g : holohedry.elements()) {
    const Eigen::VectorXd v = g.matrix * base_vector;
    bool related = false;
    for (int c = 1; c <= relation_bound && !related; ++c) {
      auto m = find_integer_coordinates(chosen, c * v, relation_bound, kConstructionTol);
      if (!m) continue;
      if (c != 1) {
        throw Error(ErrorCode::RelationSearchExhausted,
                    "orbit vector of " + g.label + " is only a rational combination of the chosen generators");
      }
      related = true;
    }
    if (!related) {
      chosen.conservativeResize(chosen.rows() + 1, Eigen::NoChange);
      chosen.row(chosen.rows() - 1) = v.transpose();
    }
  }

  const int p = static_cast<int>(chosen.rows());
  std::vector<Eigen::MatrixXi> reps;
  reps.reserve(holohedry.order());
  for (const auto& g : holohedry.elements()) {
    Eigen::MatrixXi rep(p, p);
    for (int j = 0; j < p; ++j) {
      auto m = find_integer_coordinates(chosen, g.matrix * chosen.row(j).transpose(),
                                        relation_bound, kConstructionTol);
      if (!m) {
        throw Error(ErrorCode::RelationSearchExhausted,
                    "image of generator " + std::to_string(j) + " under " + g.label +
                        " needs coefficients beyond the relation bound");
      }
      rep.col(j) = *m;
    }
    reps.push_back(std::move(rep));
  }
  return FrequencyModule(std::make_shared<Holohedry>(holohedry), base_vector, chosen,
                         std::move(reps), relation_bound);
}

ModeIndex integer_coordinates(const FrequencyModule& module, const Eigen::VectorXd& v,
                              double tol) {
  auto m = find_integer_coordinates(module.generators(), v, module.relation_bound(), tol);
  if (!m) {
    throw Error(ErrorCode::NotRepresentable,
                "no coefficient vector with |m|_inf <= " + std::to_string(module.relation_bound()));
  }
  return *m;
}

Eigen::MatrixXi integer_representation(const FrequencyModule& module, const GroupElement& g) {
  const int p = module.rank();
  Eigen::MatrixXi rep(p, p);
  for (int j = 0; j < p; ++j) {
    rep.col(j) = integer_coordinates(module, g.matrix * module.generators().row(j).transpose(),
                                     kConstructionTol * module.scale());
  }
  return rep;
}

Eigen::VectorXd mode_wavevector(const FrequencyModule& module, const ModeIndex& m) {
  return module.generators().transpose() * m.cast<double>();
}

void for_each_in_box(int dim, int bound, const std::function<void(const ModeIndex&)>& visit) {
  ModeIndex m = ModeIndex::Constant(dim, -bound);
  if (dim == 0) {
    visit(m);
    return;
  }
  while (true) {
    visit(m);
    int j = dim - 1;
    while (j >= 0 && m[j] == bound) {
      m[j] = -bound;
      --j;
    }
    if (j < 0) return;
    ++m[j];
  }
}

std::vector<ModulePoint> module_points_in_ball(const FrequencyModule& module, double radius,
                                               int bound) {
  std::vector<ModulePoint> out;
  for_each_in_box(module.rank(), bound, [&](const ModeIndex& m) {
    Eigen::VectorXd k = mode_wavevector(module, m);
    const double n = k.norm();
    if (n <= radius) out.push_back({m, std::move(k), n});
  });
  std::stable_sort(out.begin(), out.end(),
                   [](const ModulePoint& a, const ModulePoint& b) { return a.norm < b.norm; });
  return out;
}

int real_rank(const Eigen::MatrixXd& matrix, double threshold) {
  if (matrix.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix);
  return static_cast<int>((svd.singularValues().array() > threshold).count());
}

bool is_uniformly_discrete(const FrequencyModule& module) { return module.uniformly_discrete(); }

}  // namespace qc
