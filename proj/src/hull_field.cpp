#include "qc/hull_field.hpp"

#include "qc/error.hpp"
#include "spectral_grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace qc {

namespace {

std::atomic<std::uint64_t> next_mode_set_id{1};

// Position in the (2N+1)^p lookup table, or -1 outside the box.
std::int64_t box_slot(const ModeIndex& m, int box) {
  std::int64_t slot = 0;
  const std::int64_t width = 2 * box + 1;
  for (Eigen::Index j = 0; j < m.size(); ++j) {
    if (std::abs(m[j]) > box) return -1;
    slot = slot * width + (m[j] + box);
  }
  return slot;
}

void require_same_modes(const HullField& a, const HullField& b) {
  if (a.modes_ptr() != b.modes_ptr() && a.modes().id() != b.modes().id()) {
    throw Error(ErrorCode::BadValue, "fields live on different active sets");
  }
}

}  // namespace

std::shared_ptr<const ActiveModeSet> ActiveModeSet::create(
    std::shared_ptr<const FrequencyModule> module, int box_half_width, double wavenumber_cap) {
  if (box_half_width < 0) throw Error(ErrorCode::BadValue, "box half-width must be >= 0");
  const int p = module->rank();
  const int box = box_half_width;

  std::int64_t table_size = 1;
  for (int j = 0; j < p; ++j) table_size *= 2 * box + 1;
  if (table_size > 50'000'000) throw Error(ErrorCode::TooLarge, "index box too large");

  // Candidates: box intersected with the wavenumber ball.
  std::vector<ModeIndex> all;
  std::vector<char> alive(static_cast<std::size_t>(table_size), 0);
  for_each_in_box(p, box, [&](const ModeIndex& m) {
    const double k = mode_wavevector(*module, m).norm();
    if (k <= wavenumber_cap) alive[static_cast<std::size_t>(box_slot(m, box))] = 1;
    all.push_back(m);
  });

  // Remove indices whose orbit leaves the candidate set until nothing changes.
  const auto& reps = module->integer_reps();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& m : all) {
      const auto slot = static_cast<std::size_t>(box_slot(m, box));
      if (!alive[slot]) continue;
      for (const auto& rep : reps) {
        const std::int64_t image = box_slot(rep * m, box);
        if (image < 0 || !alive[static_cast<std::size_t>(image)]) {
          alive[slot] = 0;
          changed = true;
          break;
        }
      }
    }
  }

  std::shared_ptr<ActiveModeSet> set(new ActiveModeSet());
  set->module_ = std::move(module);
  set->box_ = box;
  set->cap_ = wavenumber_cap;
  set->id_ = next_mode_set_id.fetch_add(1);
  set->lookup_.assign(static_cast<std::size_t>(table_size), -1);

  std::vector<ModeIndex> kept;
  for (const auto& m : all) {
    if (alive[static_cast<std::size_t>(box_slot(m, box))]) kept.push_back(m);
  }
  const auto n = static_cast<Eigen::Index>(kept.size());
  const FrequencyModule& mod = *set->module_;
  set->indices_.resize(p, n);
  set->wavevectors_.resize(mod.dimension(), n);
  set->msq_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ModeIndex& m = kept[static_cast<std::size_t>(i)];
    set->indices_.col(i) = m;
    set->lookup_[static_cast<std::size_t>(box_slot(m, box))] = i;
    set->wavevectors_.col(i) = mode_wavevector(mod, m);
    set->msq_[i] = static_cast<double>(m.squaredNorm());
  }
  set->zero_ = static_cast<std::size_t>(set->lookup_[static_cast<std::size_t>(box_slot(ModeIndex::Zero(p), box))]);

  set->negation_.resize(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    set->negation_[i] = static_cast<std::size_t>(set->lookup_[static_cast<std::size_t>(box_slot(-kept[i], box))]);
  }

  set->action_.assign(reps.size(), std::vector<std::size_t>(kept.size()));
  for (std::size_t g = 0; g < reps.size(); ++g) {
    for (std::size_t i = 0; i < kept.size(); ++i) {
      set->action_[g][i] = static_cast<std::size_t>(set->lookup_[static_cast<std::size_t>(box_slot(reps[g] * kept[i], box))]);
    }
  }

  // |k|^2 taken from the first orbit member so that it is exactly H-invariant.
  set->ksq_ = Eigen::VectorXd::Constant(n, -1.0);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (set->ksq_[static_cast<Eigen::Index>(i)] >= 0.0) continue;
    const double value = set->wavevectors_.col(static_cast<Eigen::Index>(i)).squaredNorm();
    for (std::size_t g = 0; g < reps.size(); ++g) {
      set->ksq_[static_cast<Eigen::Index>(set->action_[g][i])] = value;
    }
  }
  return set;
}

std::optional<std::size_t> ActiveModeSet::position(const ModeIndex& m) const {
  if (m.size() != rank()) return std::nullopt;
  const std::int64_t slot = box_slot(m, box_);
  if (slot < 0) return std::nullopt;
  const std::int64_t pos = lookup_[static_cast<std::size_t>(slot)];
  if (pos < 0) return std::nullopt;
  return static_cast<std::size_t>(pos);
}

HullField::HullField(ModeSetPtr modes)
    : modes_(std::move(modes)), coeffs_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(modes_->size()))) {}

HullField::HullField(ModeSetPtr modes, Eigen::VectorXcd coefficients, bool symmetric)
    : modes_(std::move(modes)), coeffs_(std::move(coefficients)), symmetric_(symmetric) {
  if (coeffs_.size() != static_cast<Eigen::Index>(modes_->size())) {
    throw Error(ErrorCode::BadValue, "coefficient count does not match the active set");
  }
}

void HullField::set(const ModeIndex& m, Complex value) {
  auto pos = modes_->position(m);
  if (!pos) throw Error(ErrorCode::InactiveMode, "mode is not in the active set");
  const auto neg = modes_->negation(*pos);
  if (neg == *pos) value.imag(0.0);
  coeffs_[static_cast<Eigen::Index>(*pos)] = value;
  coeffs_[static_cast<Eigen::Index>(neg)] = std::conj(value);
  symmetric_ = false;
}

Complex HullField::get(const ModeIndex& m) const {
  auto pos = modes_->position(m);
  if (!pos) throw Error(ErrorCode::InactiveMode, "mode is not in the active set");
  return coeffs_[static_cast<Eigen::Index>(*pos)];
}

HullField& HullField::operator+=(const HullField& other) {
  require_same_modes(*this, other);
  coeffs_ += other.coeffs_;
  symmetric_ = symmetric_ && other.symmetric_;
  return *this;
}

HullField& HullField::operator-=(const HullField& other) {
  require_same_modes(*this, other);
  coeffs_ -= other.coeffs_;
  symmetric_ = symmetric_ && other.symmetric_;
  return *this;
}

HullField& HullField::operator*=(double factor) {
  coeffs_ *= factor;
  return *this;
}

HullField operator+(HullField a, const HullField& b) { return a += b; }
HullField operator-(HullField a, const HullField& b) { return a -= b; }
HullField operator*(double factor, HullField a) { return a *= factor; }

HullField make_field(std::shared_ptr<const FrequencyModule> module, int box_half_width,
                     double wavenumber_cap) {
  auto modes = ActiveModeSet::create(std::move(module), box_half_width, wavenumber_cap);
  if (box_half_width > 0 && modes->size() == 1) {
    throw Error(ErrorCode::EmptyActiveSet, "only the zero mode survives the truncation");
  }
  return HullField(std::move(modes));
}

HullField symmetrize(const HullField& field) {
  const auto& modes = field.modes();
  const auto order = modes.module().integer_reps().size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(field.coefficients().size());
  for (std::size_t g = 0; g < order; ++g) {
    const auto& act = modes.action(g);
    for (std::size_t i = 0; i < act.size(); ++i) {
      out[static_cast<Eigen::Index>(i)] += field.coefficients()[static_cast<Eigen::Index>(act[i])];
    }
  }
  out /= static_cast<double>(order);
  return HullField(field.modes_ptr(), std::move(out), true);
}

double symmetry_drift(const HullField& field) {
  const auto& modes = field.modes();
  const auto& a = field.coefficients();
  double worst = 0.0;
  for (std::size_t g = 0; g < modes.module().integer_reps().size(); ++g) {
    const auto& act = modes.action(g);
    for (std::size_t i = 0; i < act.size(); ++i) {
      worst = std::max(worst, std::abs(a[static_cast<Eigen::Index>(act[i])] - a[static_cast<Eigen::Index>(i)]));
    }
  }
  return worst;
}

double hermitian_defect(const HullField& field) {
  const auto& a = field.coefficients();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const auto neg = static_cast<Eigen::Index>(field.modes().negation(static_cast<std::size_t>(i)));
    worst = std::max(worst, std::abs(a[neg] - std::conj(a[i])));
  }
  return worst;
}

double l2_norm(const HullField& field) { return field.coefficients().norm(); }

double l1_norm(const HullField& field) { return field.coefficients().cwiseAbs().sum(); }

double hs_norm(const HullField& field, double s) {
  const Eigen::ArrayXd weight = (field.modes().index_norm_sq().array() + 1.0).pow(s);
  return std::sqrt((weight * field.coefficients().cwiseAbs2().array()).sum());
}

double grad_hull_sq(const HullField& field) {
  return (field.modes().index_norm_sq().array() * field.coefficients().cwiseAbs2().array()).sum();
}

double l1_hs_bound_constant(const ActiveModeSet& modes, double s) {
  return std::sqrt((modes.index_norm_sq().array() + 1.0).pow(-s).sum());
}

double inner_l2(const HullField& f, const HullField& g) {
  require_same_modes(f, g);
  return (f.coefficients().array() * g.coefficients().array().conjugate()).sum().real();
}

int dealias_points(const ActiveModeSet& modes, int padding) {
  if (padding < 2) throw Error(ErrorCode::BadValue, "dealiasing padding factor must be >= 2");
  return padding * (2 * modes.box_half_width() + 1);
}

Eigen::ArrayXd grid_values(const HullField& field, int points) {
  auto& grid = detail::spectral_grid(field.modes(), points);
  Eigen::ArrayXd values(static_cast<Eigen::Index>(grid.size()));
  grid.synthesize(field.coefficients(), values.data());
  return values;
}

HullField from_grid(const Eigen::ArrayXd& values, const ModeSetPtr& modes, int points) {
  auto& grid = detail::spectral_grid(*modes, points);
  if (static_cast<std::size_t>(values.size()) != grid.size()) {
    throw Error(ErrorCode::BadValue, "grid sample count mismatch");
  }
  Eigen::VectorXcd coeffs;
  grid.analyze(values.data(), coeffs);
  return HullField(modes, std::move(coeffs));
}

HullField pointwise_product(const HullField& f, const HullField& g, int padding) {
  require_same_modes(f, g);
  const int points = dealias_points(f.modes(), padding);
  const Eigen::ArrayXd product = grid_values(f, points) * grid_values(g, points);
  HullField out = from_grid(product, f.modes_ptr(), points);
  out.set_symmetric(f.symmetric() && g.symmetric());
  return out;
}

HullField triple_product(const HullField& f, const HullField& g, const HullField& h,
                         int padding) {
  require_same_modes(f, g);
  require_same_modes(f, h);
  auto& grid = detail::spectral_grid(f.modes(), dealias_points(f.modes(), padding));
  // Reused across calls: fresh grid-sized temporaries dominate the cost otherwise.
  thread_local Eigen::ArrayXd vf, work;
  const auto size = static_cast<Eigen::Index>(grid.size());
  vf.resize(size);
  work.resize(size);
  grid.synthesize(f.coefficients(), vf.data());
  if (&g == &f) {
    work = vf.square();
  } else {
    grid.synthesize(g.coefficients(), work.data());
    work *= vf;
  }
  if (&h == &f) {
    work *= vf;
  } else {
    grid.synthesize(h.coefficients(), vf.data());
    work *= vf;
  }
  Eigen::VectorXcd coeffs;
  grid.analyze(work.data(), coeffs);
  return HullField(f.modes_ptr(), std::move(coeffs), f.symmetric() && g.symmetric() && h.symmetric());
}

double energy(const HullField& field, double lambda, int padding) {
  const Eigen::ArrayXd ksq = field.modes().wavenumber_sq().array();
  const Eigen::ArrayXd power = field.coefficients().cwiseAbs2().array();
  const double quadratic = 0.5 * ((1.0 - ksq).square() * power).sum() - 0.5 * lambda * power.sum();
  // ||u^2||^2 is the torus mean of U^4, exact on grids with >= 4N + 1 points per axis.
  const int points = dealias_points(field.modes(), padding);
  const Eigen::ArrayXd values = grid_values(field, points);
  const double quartic = values.square().square().mean();
  return quadratic + 0.25 * quartic;
}

Eigen::VectorXd evaluate_physical(const HullField& field, const Eigen::MatrixXd& points) {
  const auto& k = field.modes().wavevectors();
  if (points.rows() != k.rows()) throw Error(ErrorCode::BadValue, "point dimension mismatch");
  const auto& a = field.coefficients();
  const double tol = 1e-10 * std::max(1.0, l1_norm(field));
  Eigen::VectorXd out(points.cols());
  for (Eigen::Index n = 0; n < points.cols(); ++n) {
    const Eigen::VectorXd phase = k.transpose() * points.col(n);
    Complex sum = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      sum += a[i] * Complex(std::cos(phase[i]), std::sin(phase[i]));
    }
    if (std::abs(sum.imag()) > tol) {
      throw Error(ErrorCode::ImaginaryResidue, "field violates Hermitian symmetry");
    }
    out[n] = sum.real();
  }
  return out;
}

Raster render_image(const HullField& field, double lo, double hi, int resolution) {
  if (field.module().dimension() != 2) {
    throw Error(ErrorCode::DimensionUnsupported, "images are only produced for d = 2");
  }
  if (resolution < 1 || !(hi > lo)) throw Error(ErrorCode::BadValue, "bad render window");
  Eigen::MatrixXd points(2, static_cast<Eigen::Index>(resolution) * resolution);
  const double step = resolution > 1 ? (hi - lo) / (resolution - 1) : 0.0;
  for (int row = 0; row < resolution; ++row) {
    for (int col = 0; col < resolution; ++col) {
      const auto n = static_cast<Eigen::Index>(row) * resolution + col;
      points(0, n) = lo + step * col;
      points(1, n) = hi - step * row;
    }
  }
  const Eigen::VectorXd values = evaluate_physical(field, points);
  const double vmin = values.minCoeff();
  const double vmax = values.maxCoeff();
  Raster out{resolution, resolution, std::vector<std::uint8_t>(static_cast<std::size_t>(values.size()), 128)};
  const double span = vmax - vmin;
  if (span > 1e-12 * std::max(1.0, std::abs(vmax))) {
    for (Eigen::Index n = 0; n < values.size(); ++n) {
      out.pixels[static_cast<std::size_t>(n)] =
          static_cast<std::uint8_t>(std::lround(255.0 * (values[n] - vmin) / span));
    }
  }
  return out;
}

std::vector<ModeIndex> support_set(const HullField& field, double eps) {
  std::vector<ModeIndex> out;
  const auto& a = field.coefficients();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > eps) out.push_back(field.modes().index(static_cast<std::size_t>(i)));
  }
  return out;
}

ConditionIIIResult condition_iii_check(const HullField& field, double radius, double r,
                                       double eps) {
  const auto& modes = field.modes();
  if (radius > modes.wavenumber_cap()) {
    throw Error(ErrorCode::BallExceedsTruncation, "ball radius exceeds the wavenumber cap");
  }
  const auto& module = modes.module();
  ConditionIIIResult result;
  result.coefficient_bound = module.relation_bound();
  const auto ball = module_points_in_ball(module, radius, module.relation_bound());
  result.ball_points = ball.size();

  std::vector<Eigen::Index> support;
  const auto& a = field.coefficients();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > eps) support.push_back(i);
  }
  const auto& k = modes.wavevectors();
  for (const auto& point : ball) {
    bool covered = false;
    for (Eigen::Index i : support) {
      if ((k.col(i) - point.wavevector).norm() <= r) {
        covered = true;
        break;
      }
    }
    if (!covered) result.uncovered.push_back(point);
  }
  result.passed = result.uncovered.empty();
  return result;
}

GridRange grid_range(const HullField& field, int grid_resolution) {
  const int minimum = 2 * field.modes().box_half_width() + 1;
  if (grid_resolution >= minimum) {
    const Eigen::ArrayXd values = grid_values(field, grid_resolution);
    return {values.minCoeff(), values.maxCoeff()};
  }
  // Coarse grids: sum the series directly at each torus node.
  const int p = field.modes().rank();
  const auto& idx = field.modes().indices();
  const auto& a = field.coefficients();
  GridRange range{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  const double step = 2.0 * M_PI / grid_resolution;
  std::vector<int> node(static_cast<std::size_t>(p), 0);
  while (true) {
    double value = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      double phase = 0.0;
      for (int j = 0; j < p; ++j) phase += idx(j, i) * step * node[static_cast<std::size_t>(j)];
      value += (a[i] * Complex(std::cos(phase), std::sin(phase))).real();
    }
    range.min = std::min(range.min, value);
    range.max = std::max(range.max, value);
    int j = p - 1;
    while (j >= 0 && node[static_cast<std::size_t>(j)] == grid_resolution - 1) {
      node[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
    ++node[static_cast<std::size_t>(j)];
  }
  return range;
}

double separation_from_constants(const HullField& field, int grid_resolution) {
  const auto range = grid_range(field, grid_resolution);
  return 0.5 * (range.max - range.min);
}

}  // namespace qc
