#include "qc/diagnostics.hpp"

#include "qc/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace qc {

namespace {

int grid_points_for(const ActiveModeSet& modes, const RecordOptions& options) {
  return options.grid_points > 0 ? options.grid_points : dealias_points(modes, options.padding);
}

// Rank over Q of a set of integer vectors, by exact elimination.
int integer_rank(const std::vector<ModeIndex>& vectors) {
  std::vector<std::vector<long long>> basis;  // echelon rows with pivot columns
  std::vector<int> pivots;
  for (const auto& v : vectors) {
    std::vector<long long> row(v.data(), v.data() + v.size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const int c = pivots[b];
      if (row[static_cast<std::size_t>(c)] == 0) continue;
      const long long x = basis[b][static_cast<std::size_t>(c)];
      const long long y = row[static_cast<std::size_t>(c)];
      const long long g = std::gcd(x, y);
      for (std::size_t j = 0; j < row.size(); ++j) {
        row[j] = row[j] * (x / g) - basis[b][j] * (y / g);
      }
      long long content = 0;
      for (long long e : row) content = std::gcd(content, e);
      if (content > 1) {
        for (auto& e : row) e /= content;
      }
    }
    const auto it = std::find_if(row.begin(), row.end(), [](long long e) { return e != 0; });
    if (it == row.end()) continue;
    pivots.push_back(static_cast<int>(it - row.begin()));
    basis.push_back(std::move(row));
  }
  return static_cast<int>(basis.size());
}

}  // namespace

DiagnosticsRecord record(const SolverState& state, const RecordOptions& options) {
  const HullField& u = state.field;
  const auto& modes = u.modes();
  const double lambda = state.params.lambda;
  DiagnosticsRecord r;
  r.t = state.t;
  r.l2 = l2_norm(u);
  r.l1 = l1_norm(u);
  r.hs = hs_norm(u, options.sobolev_index);
  r.grad_hull_sq = grad_hull_sq(u);
  r.sym_drift = symmetry_drift(u);

  const int points = dealias_points(modes, options.padding);
  const Eigen::ArrayXd values = grid_values(u, points);
  const Eigen::ArrayXd ksq = modes.wavenumber_sq().array();
  const Eigen::ArrayXd power = u.coefficients().cwiseAbs2().array();
  r.energy = 0.5 * ((1.0 - ksq).square() * power).sum() - 0.5 * lambda * power.sum() +
             0.25 * values.square().square().mean();

  const HullField cube = from_grid(values.cube(), u.modes_ptr(), points);
  const Eigen::VectorXcd du =
      linear_symbols(modes, lambda).cast<Complex>().cwiseProduct(u.coefficients()) - cube.coefficients();
  r.rhs_l2 = du.norm();

  const int range_points = grid_points_for(modes, options);
  if (range_points == points) {
    r.min_u = values.minCoeff();
    r.max_u = values.maxCoeff();
  } else {
    const auto range = grid_range(u, range_points);
    r.min_u = range.min;
    r.max_u = range.max;
  }
  return r;
}

DiagnosticsRecord record(const BrusselatorState& state, const RecordOptions& options) {
  const auto& modes = state.u.modes();
  DiagnosticsRecord r;
  r.t = state.t;
  r.l2 = l2_norm(state.u);
  r.l1 = l1_norm(state.u);
  r.hs = hs_norm(state.u, options.sobolev_index);
  r.energy = 0.0;
  const auto [du, dv] = bruss_rhs(state, options.padding);
  r.rhs_l2 = std::sqrt(du.coefficients().squaredNorm() + dv.coefficients().squaredNorm());
  r.grad_hull_sq = grad_hull_sq(state.u);
  r.sym_drift = std::max(symmetry_drift(state.u), symmetry_drift(state.v));
  const int points = grid_points_for(modes, options);
  const auto ru = grid_range(state.u, points);
  const auto rv = grid_range(state.v, points);
  r.min_u = ru.min;
  r.max_u = ru.max;
  r.has_v = true;
  r.min_v = rv.min;
  r.max_v = rv.max;
  return r;
}

CheckReport make_report(std::string name, double worst_slack, double t_worst, double tolerance,
                        std::string note) {
  return {std::move(name), worst_slack <= tolerance, worst_slack, t_worst, tolerance, std::move(note)};
}

std::string format_report(const CheckReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %-44s worst_slack=% .6e at t=%.4g tol=%.3e",
                report.passed ? "PASS" : "FAIL", report.name.c_str(), report.worst_slack,
                report.t_worst, report.tolerance);
  std::string out(buf);
  if (!report.note.empty()) out += "  [" + report.note + "]";
  return out;
}

namespace {

// Maximum of slack(i) over samples with its time.
template <typename F>
std::pair<double, double> worst_over(const Trajectory& tr, std::size_t first, F&& slack) {
  double worst = -std::numeric_limits<double>::infinity();
  double at = tr.empty() ? 0.0 : tr.front().t;
  for (std::size_t i = first; i < tr.size(); ++i) {
    const double s = slack(i);
    if (s > worst) {
      worst = s;
      at = tr[i].t;
    }
  }
  if (worst == -std::numeric_limits<double>::infinity()) worst = 0.0;
  return {worst, at};
}

}  // namespace

CheckReport check_decay_negative_lambda(const Trajectory& tr, double lambda) {
  if (!(lambda < 0.0)) throw Error(ErrorCode::BadValue, "decay check needs lambda < 0");
  if (tr.empty()) return make_report("decay (lambda < 0)", 0.0, 0.0, 1e-9);
  const double t0 = tr.front().t, l0 = tr.front().l2;
  auto [w, at] = worst_over(tr, 0, [&](std::size_t i) {
    return tr[i].l2 - std::exp(lambda * (tr[i].t - t0)) * l0;
  });
  return make_report("decay (lambda < 0)", w, at, 1e-9);
}

CheckReport check_decay_zero_lambda(const Trajectory& tr) {
  if (tr.empty()) return make_report("decay (lambda = 0)", 0.0, 0.0, 1e-9);
  const double t0 = tr.front().t;
  const double n0 = tr.front().l2 * tr.front().l2;
  auto [w, at] = worst_over(tr, 0, [&](std::size_t i) {
    return tr[i].l2 * tr[i].l2 - n0 / (1.0 + n0 * (tr[i].t - t0));
  });
  return make_report("decay (lambda = 0)", w, at, 1e-9);
}

AbsorbingBallReport check_absorbing_ball(const Trajectory& tr, double lambda, double eps) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::BadValue, "absorbing ball needs lambda > 0");
  const double radius = (1.0 + eps) * std::sqrt(lambda);
  AbsorbingBallReport out;
  if (tr.empty()) {
    out.stays_inside = make_report("absorbing ball", 0.0, 0.0, 1e-9, "empty trajectory");
    return out;
  }
  const auto first = std::find_if(tr.begin(), tr.end(), [&](const DiagnosticsRecord& r) { return r.l2 <= radius; });
  if (first == tr.end()) {
    throw Error(ErrorCode::NeverEnters, "trajectory never enters the ball; integrate longer");
  }
  const auto start = static_cast<std::size_t>(first - tr.begin());
  out.entry_time = first->t - tr.front().t;
  auto [w, at] = worst_over(tr, start, [&](std::size_t i) { return tr[i].l2 - radius; });

  const double n0 = tr.front().l2 * tr.front().l2;
  const double target = radius * radius;
  if (n0 > target) {
    const double ratio = (lambda * n0 / target - n0) / (lambda - n0);
    out.comparison_time = -std::log(ratio) / lambda;
  }
  char note[96];
  std::snprintf(note, sizeof note, "entry t=%.4g, comparison bound t=%.4g", out.entry_time, out.comparison_time);
  out.stays_inside = make_report("absorbing ball", w, at, 1e-9, note);

  if (tr.front().l2 <= std::sqrt(lambda)) {
    auto [wi, ati] = worst_over(tr, 0, [&](std::size_t i) { return tr[i].l2 - std::sqrt(lambda); });
    out.invariance = make_report("absorbing ball invariance", wi, ati, 1e-9);
  }
  return out;
}

LyapunovReport check_lyapunov(const Trajectory& tr, double dt) {
  double max_rhs_sq = 0.0;
  for (const auto& r : tr) max_rhs_sq = std::max(max_rhs_sq, r.rhs_l2 * r.rhs_l2);
  double mono = -std::numeric_limits<double>::infinity(), mono_t = 0.0;
  double ident = 0.0, ident_t = 0.0;
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    const double span = tr[i + 1].t - tr[i].t;
    if (!(span > 0.0)) continue;
    const double steps = std::max(1.0, std::round(span / dt));
    const double dP = tr[i + 1].energy - tr[i].energy;
    if (dP / steps > mono) {
      mono = dP / steps;
      mono_t = tr[i].t;
    }
    const double mid_rate = 0.5 * (tr[i].rhs_l2 * tr[i].rhs_l2 + tr[i + 1].rhs_l2 * tr[i + 1].rhs_l2);
    const double defect = std::abs(dP / span + mid_rate);
    if (defect > ident) {
      ident = defect;
      ident_t = 0.5 * (tr[i].t + tr[i + 1].t);
    }
  }
  if (mono == -std::numeric_limits<double>::infinity()) mono = 0.0;
  return {make_report("Lyapunov monotonicity (per step)", mono, mono_t, 10.0 * dt * dt * dt),
          make_report("Lyapunov identity dP/dt = -|u_t|^2", ident, ident_t, 10.0 * max_rhs_sq * dt)};
}

CheckReport check_energy_inequality(const Trajectory& tr, double lambda, double dt) {
  auto f = [&](double n) { return n * (lambda - n); };
  double worst = -std::numeric_limits<double>::infinity(), at = 0.0;
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    const double span = tr[i + 1].t - tr[i].t;
    if (!(span > 0.0)) continue;
    const double na = tr[i].l2 * tr[i].l2, nb = tr[i + 1].l2 * tr[i + 1].l2;
    const double lo = std::min(na, nb), hi = std::max(na, nb);
    const double peak = (lo <= 0.5 * lambda && 0.5 * lambda <= hi) ? f(0.5 * lambda) : std::max(f(lo), f(hi));
    const double slack = (nb - na) / span - peak;
    if (slack > worst) {
      worst = slack;
      at = tr[i].t;
    }
  }
  if (worst == -std::numeric_limits<double>::infinity()) worst = 0.0;
  return make_report("energy inequality dN/dt <= N(lambda-N)", worst, at, 10.0 * dt * dt + 1e-9);
}

CheckReport check_h1_growth(const Trajectory& tr, double lambda) {
  if (tr.empty()) return make_report("H1 growth bound", 0.0, 0.0, 1e-9);
  const double t0 = tr.front().t, g0 = tr.front().grad_hull_sq;
  auto [w, at] = worst_over(tr, 0, [&](std::size_t i) {
    return tr[i].grad_hull_sq - std::exp(2.0 * lambda * (tr[i].t - t0)) * g0;
  });
  return make_report("H1 growth bound", w, at, 1e-9);
}

CheckReport check_l1_control(const Trajectory& tr, double bound_constant) {
  auto [w, at] = worst_over(tr, 0, [&](std::size_t i) { return tr[i].l1 - bound_constant * tr[i].hs; });
  return make_report("l1 <= C(s) * H^s", w, at, 1e-12);
}

CheckReport check_upper_branch_bound(const Trajectory& tr, double lambda) {
  const double root = std::sqrt(lambda);
  auto [w, at] = worst_over(tr, 0, [&](std::size_t i) { return tr[i].l2 - root; });
  double inf_ratio = std::numeric_limits<double>::infinity();
  for (const auto& r : tr) inf_ratio = std::min(inf_ratio, r.l2 / root);
  char note[64];
  std::snprintf(note, sizeof note, "measured C_H = inf l2/sqrt(lambda) = %.6f", inf_ratio);
  return make_report("branch upper bound l2 <= sqrt(lambda)", w, at, 1e-9, note);
}

CheckReport check_lower_branch_bound(const Trajectory& tr, double lambda, double floor) {
  const double root = std::sqrt(lambda);
  auto [w, at] = worst_over(tr, 0, [&](std::size_t i) { return floor - tr[i].l2 / root; });
  return make_report("branch lower bound l2/sqrt(lambda) >= floor", w, at, 0.0);
}

CheckReport check_separation(const Trajectory& tr, double threshold) {
  auto [w, at] = worst_over(tr, 0, [&](std::size_t i) { return threshold - 0.5 * (tr[i].max_u - tr[i].min_u); });
  return make_report("separation from constants", w, at, 0.0, "grid-sampled, recorded times only");
}

CheckReport check_symmetry(const Trajectory& tr, double tolerance) {
  auto [w, at] = worst_over(tr, 0, [&](std::size_t i) { return tr[i].sym_drift; });
  return make_report("symmetry drift", w, at, tolerance);
}

QuasicrystalReport classify_quasicrystal(const HullField& field, const std::vector<double>& eps_grid,
                                         double radius, double r) {
  QuasicrystalReport out;
  const auto& a = field.coefficients();
  const auto zero = static_cast<Eigen::Index>(field.modes().zero_position());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i != zero && a[i] != Complex(0.0, 0.0)) out.spatially_constant = false;
  }
  out.condition_i = std::isfinite(l1_norm(field));
  out.coefficient_bound = field.module().relation_bound();

  std::vector<double> grid = eps_grid;
  std::sort(grid.begin(), grid.end(), std::greater<>());
  for (double eps : grid) {
    const auto support = support_set(field, eps);
    Eigen::MatrixXd k(field.module().dimension(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j) {
      k.col(static_cast<Eigen::Index>(j)) = mode_wavevector(field.module(), support[j]);
    }
    const int zrank = integer_rank(support);
    const int rrank = real_rank(k);
    if (!out.condition_ii && zrank > rrank) {
      out.condition_ii = true;
      out.condition_ii_eps = eps;
      out.support_integer_rank = zrank;
      out.support_real_rank = rrank;
    }
    if (!out.condition_iii && condition_iii_check(field, radius, r, eps).passed) {
      out.condition_iii = true;
      out.condition_iii_eps = eps;
    }
    if (out.condition_ii && out.condition_iii) break;
  }
  if (!out.condition_ii && !grid.empty()) {
    const auto support = support_set(field, grid.back());
    out.support_integer_rank = integer_rank(support);
    Eigen::MatrixXd k(field.module().dimension(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j) {
      k.col(static_cast<Eigen::Index>(j)) = mode_wavevector(field.module(), support[j]);
    }
    out.support_real_rank = real_rank(k);
  }
  return out;
}

}  // namespace qc
