#include "qc/brusselator.hpp"

#include "qc/diagnostics.hpp"
#include "qc/error.hpp"

#include <cmath>
#include <limits>

namespace qc {

namespace {

using PairStepper = EtdStepper<2>;

std::vector<PairStepper::Block> linear_blocks(const ActiveModeSet& modes, const BrusselatorParams& p) {
  const auto& ksq = modes.wavenumber_sq();
  std::vector<PairStepper::Block> out(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double k2 = ksq[static_cast<Eigen::Index>(i)];
    out[i] << -p.d1 * k2 - (p.B + 1.0), 0.0, p.B, -p.d2 * k2;
  }
  return out;
}

PairStepper::Nonlinear explicit_part(const ModeSetPtr& modes, const BrusselatorParams& p, int padding) {
  const auto zero = static_cast<Eigen::Index>(modes->zero_position());
  return [modes, p, padding, zero](const PairStepper::State& s) -> PairStepper::State {
    const HullField u(modes, s.col(0));
    const HullField v(modes, s.col(1));
    const Eigen::VectorXcd w = bruss_nonlinear(u, v, padding).coefficients();
    PairStepper::State out(s.rows(), 2);
    out.col(0) = w;
    out.col(1) = -w;
    out(zero, 0) += p.A;
    return out;
  };
}

PairStepper::State pack(const BrusselatorState& s) {
  PairStepper::State out(s.u.coefficients().size(), 2);
  out.col(0) = s.u.coefficients();
  out.col(1) = s.v.coefficients();
  return out;
}

void unpack(const PairStepper::State& packed, BrusselatorState& s) {
  s.u.coefficients() = packed.col(0);
  s.v.coefficients() = packed.col(1);
  if (!packed.allFinite()) {
    throw NonFiniteStateError(s.t, "non-finite Brusselator coefficient at t = " + std::to_string(s.t));
  }
}

double det_at(const BrusselatorParams& p, double kappa_sq) {
  return dispersion_matrix(p, kappa_sq).determinant();
}

// Minimizer over kappa^2 >= 0 of det(dispersion_matrix) at fixed B.
double dispersion_minimizer(const BrusselatorParams& p) {
  auto f = [&](double x) { return det_at(p, x); };
  double hi = 1.0;
  while (f(hi) <= f(0.5 * hi)) {
    hi *= 2.0;
    if (hi > 1e12) throw Error(ErrorCode::NoBracket, "dispersion determinant unbounded below");
  }
  return golden_section_minimize(f, 0.0, hi);
}

}  // namespace

double BrusselatorParams::eta() const { return std::sqrt(d1 / d2); }

void BrusselatorParams::validate() const {
  if (!(A > 0.0 && B > 0.0 && d1 > 0.0 && d2 > 0.0)) {
    throw Error(ErrorCode::BadValue, "Brusselator parameters must all be positive");
  }
}

std::pair<double, double> steady_state(const BrusselatorParams& params) {
  if (!(params.A > 0.0)) throw Error(ErrorCode::BadValue, "A must be positive");
  return {params.A, params.B / params.A};
}

Eigen::Matrix2d dispersion_matrix(const BrusselatorParams& p, double kappa_sq) {
  Eigen::Matrix2d m;
  m << -p.d1 * kappa_sq + p.B - 1.0, p.A * p.A, -p.B, -p.d2 * kappa_sq - p.A * p.A;
  return m;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
    if (b - a < 1e-300) break;
  }
  double x = 0.5 * (a + b);
  // Golden section only resolves the argument to ~sqrt(eps); polish with a
  // parabola through widely spaced points.
  const double h = std::max(1e-3 * std::abs(x), 1e-6);
  if (x - h >= lo) {
    const double f0 = f(x - h), f1 = f(x), f2 = f(x + h);
    const double curvature = f0 - 2.0 * f1 + f2;
    if (curvature > 0.0) {
      const double shift = 0.5 * h * (f0 - f2) / curvature;
      if (std::abs(shift) <= h) x += shift;
    }
  }
  return x;
}

TuringReport turing_analysis(double A, double d1, double d2) {
  if (!(A > 0.0 && d1 > 0.0 && d2 > 0.0)) throw Error(ErrorCode::BadValue, "A, d1, d2 must be positive");
  BrusselatorParams p{A, 0.0, d1, d2};
  auto g = [&](double B) {
    p.B = B;
    return det_at(p, dispersion_minimizer(p));
  };
  double b_lo = 0.0, b_hi = 1.0;
  while (g(b_hi) > 0.0) {
    b_lo = b_hi;
    b_hi *= 2.0;
    if (b_hi > 1e12) throw Error(ErrorCode::NoBracket, "no finite-wavelength instability found");
  }
  for (int it = 0; it < 400 && b_hi - b_lo > 4.0 * std::numeric_limits<double>::epsilon() * b_hi; ++it) {
    const double mid = 0.5 * (b_lo + b_hi);
    (g(mid) > 0.0 ? b_lo : b_hi) = mid;
  }

  TuringReport out;
  out.eta = std::sqrt(d1 / d2);
  out.B_c = 0.5 * (b_lo + b_hi);
  p.B = out.B_c;
  const double kappa_sq = dispersion_minimizer(p);
  if (!(kappa_sq > 1e-12)) throw Error(ErrorCode::NoBracket, "minimum at zero wavenumber");
  out.k_c = std::sqrt(kappa_sq);
  out.B_c_closed = (1.0 + A * out.eta) * (1.0 + A * out.eta);
  out.k_c_closed = std::sqrt(A / std::sqrt(d1 * d2));
  out.hopf_threshold = 1.0 + A * A;
  out.turing_first = out.B_c < out.hopf_threshold;

  Eigen::JacobiSVD<Eigen::Matrix2d> svd(dispersion_matrix(p, kappa_sq), Eigen::ComputeFullV);
  Eigen::Vector2d kernel = svd.matrixV().col(1);
  if (kernel[1] < 0.0 || (kernel[1] == 0.0 && kernel[0] > 0.0)) kernel = -kernel;
  out.eigenvector = kernel.normalized();
  return out;
}

HullField bruss_nonlinear(const HullField& u, const HullField& v, int padding) {
  return triple_product(u, u, v, padding);
}

std::pair<HullField, HullField> bruss_rhs(const BrusselatorState& state, int padding) {
  const auto& p = state.params;
  const auto& ksq = state.u.modes().wavenumber_sq();
  const Eigen::VectorXcd w = bruss_nonlinear(state.u, state.v, padding).coefficients();
  const Eigen::VectorXcd& a = state.u.coefficients();
  const Eigen::VectorXcd& b = state.v.coefficients();
  Eigen::VectorXcd du = (-p.d1 * ksq.array() - (p.B + 1.0)).matrix().cast<Complex>().cwiseProduct(a) + w;
  Eigen::VectorXcd dv = (-p.d2 * ksq.array()).matrix().cast<Complex>().cwiseProduct(b) + p.B * a - w;
  du[static_cast<Eigen::Index>(state.u.modes().zero_position())] += p.A;
  return {HullField(state.u.modes_ptr(), std::move(du)), HullField(state.v.modes_ptr(), std::move(dv))};
}

BrusselatorState bruss_step(const BrusselatorState& state, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::BadValue, "dt must be positive");
  state.params.validate();
  const auto& modes = state.u.modes_ptr();
  const PairStepper stepper(linear_blocks(*modes, state.params), state.stepper.scheme, dt,
                            state.stepper.phi_series_threshold);
  BrusselatorState next = state;
  next.t = state.t + dt;
  unpack(stepper.step(pack(state), explicit_part(modes, state.params, 2)), next);
  return next;
}

BrusselatorResult bruss_integrate(BrusselatorState state, double duration,
                                  const BrusselatorOptions& options) {
  if (duration < 0.0) throw Error(ErrorCode::BadValue, "duration must be >= 0");
  state.params.validate();
  const double dt = state.stepper.dt;
  if (!(dt > 0.0)) throw Error(ErrorCode::BadValue, "dt must be positive");
  if (options.diag_every < 1) throw Error(ErrorCode::BadValue, "diag_every must be >= 1");

  const auto modes = state.u.modes_ptr();
  const RecordOptions rec{options.sobolev_index, options.padding, 0};
  BrusselatorResult result{state, {}};
  auto sample = [&](const BrusselatorState& s) {
    result.trajectory.push_back(record(s, rec));
    if (options.observer) options.observer(s);
  };
  sample(state);

  const double t0 = state.t;
  const auto full_steps = static_cast<long>(std::floor(duration / dt + 1e-9));
  const double remainder = duration - static_cast<double>(full_steps) * dt;
  const auto blocks = linear_blocks(*modes, state.params);
  const PairStepper stepper(blocks, state.stepper.scheme, dt, state.stepper.phi_series_threshold);
  const auto nonlinear = explicit_part(modes, state.params, options.padding);
  const bool su = state.u.symmetric(), sv = state.v.symmetric();

  PairStepper::State packed = pack(state);
  for (long n = 1; n <= full_steps; ++n) {
    packed = stepper.step(packed, nonlinear);
    state.t = t0 + static_cast<double>(n) * dt;
    if (n % options.diag_every == 0 || (n == full_steps && remainder <= 1e-12 * dt)) {
      unpack(packed, state);
      sample(state);
    } else if (!packed.allFinite()) {
      unpack(packed, state);
    }
  }
  if (remainder > 1e-12 * dt) {
    const PairStepper last(blocks, state.stepper.scheme, remainder, state.stepper.phi_series_threshold);
    packed = last.step(packed, nonlinear);
    state.t = t0 + duration;
    unpack(packed, state);
    sample(state);
  }
  unpack(packed, state);
  state.u.set_symmetric(su);
  state.v.set_symmetric(sv);
  result.final_state = std::move(state);
  return result;
}

BrusselatorState steady_state_fields(const ModeSetPtr& modes, const BrusselatorParams& params,
                                     const StepperConfig& stepper) {
  params.validate();
  const auto [ub, vb] = steady_state(params);
  BrusselatorState s{HullField(modes), HullField(modes), 0.0, params, stepper};
  const ModeIndex zero = ModeIndex::Zero(modes->rank());
  s.u.set(zero, ub);
  s.v.set(zero, vb);
  s.u.set_symmetric(true);
  s.v.set_symmetric(true);
  return s;
}

BrusselatorState steady_plus_orbit(const ModeSetPtr& modes, const BrusselatorParams& params,
                                   const Eigen::Vector2d& direction, double amplitude,
                                   const StepperConfig& stepper) {
  BrusselatorState s = steady_state_fields(modes, params, stepper);
  ModeIndex base = ModeIndex::Zero(modes->rank());
  base[0] = 1;
  for (const auto& rep : modes->module().integer_reps()) {
    const ModeIndex m = rep * base;
    if (!modes->position(m)) throw Error(ErrorCode::EmptyActiveSet, "orbit of k0 is not active");
    s.u.set(m, amplitude * direction[0]);
    s.v.set(m, amplitude * direction[1]);
  }
  s.u.set_symmetric(true);
  s.v.set_symmetric(true);
  return s;
}

double positivity_check(const BrusselatorState& state, int grid_resolution) {
  return std::min(grid_range(state.u, grid_resolution).min, grid_range(state.v, grid_resolution).min);
}

}  // namespace qc
