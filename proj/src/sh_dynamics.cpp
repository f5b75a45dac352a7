#include "qc/sh_dynamics.hpp"

#include "qc/diagnostics.hpp"
#include "qc/error.hpp"

#include <cmath>
#include <random>

namespace qc {

namespace {

using ScalarStepper = EtdStepper<1>;

std::vector<ScalarStepper::Block> linear_blocks(const ActiveModeSet& modes, double lambda) {
  const Eigen::VectorXd sigma = linear_symbols(modes, lambda);
  std::vector<ScalarStepper::Block> out(static_cast<std::size_t>(sigma.size()));
  for (Eigen::Index i = 0; i < sigma.size(); ++i) out[static_cast<std::size_t>(i)](0, 0) = sigma[i];
  return out;
}

ScalarStepper::Nonlinear minus_cube(const ModeSetPtr& modes, int padding) {
  return [modes, padding](const ScalarStepper::State& u) -> ScalarStepper::State {
    const HullField field(modes, u.col(0));
    return -triple_product(field, field, field, padding).coefficients();
  };
}

void require_finite(const HullField& field, double t) {
  if (!field.coefficients().allFinite()) {
    throw NonFiniteStateError(t, "non-finite coefficient at t = " + std::to_string(t));
  }
}

// Canonical representative of each {m, -m} pair: first nonzero entry positive.
bool canonical(const ModeIndex& m) {
  for (Eigen::Index j = 0; j < m.size(); ++j) {
    if (m[j] != 0) return m[j] > 0;
  }
  return true;
}

}  // namespace

double linear_symbol(const FrequencyModule& module, const ModeIndex& m, double lambda) {
  const double ksq = mode_wavevector(module, m).squaredNorm();
  return lambda - (ksq - 1.0) * (ksq - 1.0);
}

Eigen::VectorXd linear_symbols(const ActiveModeSet& modes, double lambda) {
  return (lambda - (modes.wavenumber_sq().array() - 1.0).square()).matrix();
}

HullField rhs(const HullField& field, double lambda, int padding) {
  HullField cube = triple_product(field, field, field, padding);
  Eigen::VectorXcd out =
      linear_symbols(field.modes(), lambda).cast<Complex>().cwiseProduct(field.coefficients()) -
      cube.coefficients();
  return HullField(field.modes_ptr(), std::move(out), field.symmetric());
}

HullField triple_convolution_direct(const HullField& f, const HullField& g, const HullField& h) {
  const auto& modes = f.modes();
  const auto n = static_cast<Eigen::Index>(modes.size());
  if (static_cast<double>(n) * static_cast<double>(n) > 1e4) {
    throw Error(ErrorCode::TooLarge, "direct triple convolution limited to 1e4 pairs per mode");
  }
  const auto& idx = modes.indices();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const ModeIndex rest = idx.col(k) - idx.col(i) - idx.col(j);
        if (auto pos = modes.position(rest)) {
          sum += f.coefficients()[i] * g.coefficients()[j] *
                 h.coefficients()[static_cast<Eigen::Index>(*pos)];
        }
      }
    }
    out[k] = sum;
  }
  return HullField(f.modes_ptr(), std::move(out));
}

HullField cubic_direct(const HullField& field) {
  return triple_convolution_direct(field, field, field);
}

SolverState step(const SolverState& state, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::BadValue, "dt must be positive");
  const auto& modes = state.field.modes_ptr();
  const ScalarStepper stepper(linear_blocks(*modes, state.params.lambda), state.stepper.scheme,
                              dt, state.stepper.phi_series_threshold);
  SolverState next = state;
  next.field.coefficients() = stepper.step(state.field.coefficients(), minus_cube(modes, 2)).col(0);
  next.t = state.t + dt;
  require_finite(next.field, next.t);
  return next;
}

HullField orbit_field(const ModeSetPtr& modes, double target_l2, double noise_amplitude,
                      std::uint64_t seed) {
  const auto& module = modes->module();
  HullField field(modes);
  ModeIndex base = ModeIndex::Zero(module.rank());
  base[0] = 1;  // k0 is always the first generator
  for (const auto& rep : module.integer_reps()) {
    const ModeIndex m = rep * base;
    if (!modes->position(m)) {
      throw Error(ErrorCode::EmptyActiveSet, "orbit of k0 is not inside the active set");
    }
    field.set(m, 1.0);
  }
  if (noise_amplitude > 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-noise_amplitude, noise_amplitude);
    for (std::size_t i = 0; i < modes->size(); ++i) {
      const ModeIndex m = modes->index(i);
      if (!canonical(m)) continue;
      field.set(m, field.get(m) + dist(rng));
    }
  }
  HullField out = symmetrize(field);
  const double norm = l2_norm(out);
  if (norm > 0.0) out *= target_l2 / norm;
  return out;
}

HullField quasicrystal_ic(const ModeSetPtr& modes, double lambda, double rho, double delta,
                          std::uint64_t seed) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::BadValue, "quasicrystal IC needs lambda > 0");
  if (!(rho > 0.0 && rho <= 1.0)) throw Error(ErrorCode::BadValue, "rho must lie in (0, 1]");
  if (delta < 0.0) throw Error(ErrorCode::BadValue, "perturbation must be >= 0");
  const double root = std::sqrt(lambda);
  return orbit_field(modes, rho * root, delta * root, seed);
}

HullField random_ic(const ModeSetPtr& modes, double target_l2, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  HullField field(modes);
  for (std::size_t i = 0; i < modes->size(); ++i) {
    const ModeIndex m = modes->index(i);
    if (!canonical(m)) continue;
    const double re = dist(rng);
    const double im = dist(rng);
    field.set(m, Complex(re, im));
  }
  const double norm = l2_norm(field);
  if (norm > 0.0) field *= target_l2 / norm;
  return field;
}

IntegrationResult integrate(SolverState state, double duration, const IntegrateOptions& options) {
  if (duration < 0.0) throw Error(ErrorCode::BadValue, "duration must be >= 0");
  const double dt = state.stepper.dt;
  if (!(dt > 0.0)) throw Error(ErrorCode::BadValue, "dt must be positive");
  if (options.diag_every < 1) throw Error(ErrorCode::BadValue, "diag_every must be >= 1");

  const auto modes = state.field.modes_ptr();
  const RecordOptions rec{options.sobolev_index, options.padding, 0};
  IntegrationResult result{state, {}};
  auto sample = [&](const SolverState& s) {
    result.trajectory.push_back(record(s, rec));
    if (options.observer) options.observer(s);
  };
  sample(state);

  const double t0 = state.t;
  const auto full_steps = static_cast<long>(std::floor(duration / dt + 1e-9));
  const double remainder = duration - static_cast<double>(full_steps) * dt;
  const auto blocks = linear_blocks(*modes, state.params.lambda);
  const ScalarStepper stepper(blocks, state.stepper.scheme, dt, state.stepper.phi_series_threshold);
  const auto nonlinear = minus_cube(modes, options.padding);
  const bool symmetric = state.field.symmetric();

  for (long n = 1; n <= full_steps; ++n) {
    state.field.coefficients() = stepper.step(state.field.coefficients(), nonlinear).col(0);
    state.t = t0 + static_cast<double>(n) * dt;
    require_finite(state.field, state.t);
    if (n % options.diag_every == 0 || (n == full_steps && remainder <= 1e-12 * dt)) sample(state);
  }
  if (remainder > 1e-12 * dt) {
    const ScalarStepper last(blocks, state.stepper.scheme, remainder, state.stepper.phi_series_threshold);
    state.field.coefficients() = last.step(state.field.coefficients(), nonlinear).col(0);
    state.t = t0 + duration;
    require_finite(state.field, state.t);
    sample(state);
  }
  state.field.set_symmetric(symmetric);
  result.final_state = std::move(state);
  return result;
}

double fit_log_slope(const std::vector<double>& times, const std::vector<double>& values) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  int count = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(values[i] > 0.0)) continue;
    const double y = std::log(values[i]);
    st += times[i];
    sy += y;
    stt += times[i] * times[i];
    sty += times[i] * y;
    ++count;
  }
  if (count < 2) return 0.0;
  const double denom = count * stt - st * st;
  return denom == 0.0 ? 0.0 : (count * sty - st * sy) / denom;
}

BranchGrowthResult branch_growth(const ModeSetPtr& modes, double lambda, double delta,
                                 double duration, const StepperConfig& stepper,
                                 double fit_window) {
  if (lambda == 0.0) throw Error(ErrorCode::BadValue, "branch growth needs lambda != 0");
  if (delta < 0.0 || delta > 1e-4) throw Error(ErrorCode::BadValue, "delta must lie in [0, 1e-4]");
  SolverState state{orbit_field(modes, delta), 0.0, {lambda}, stepper};
  BranchGrowthResult out{integrate(std::move(state), duration), 0.0};
  std::vector<double> t, l2;
  for (const auto& r : out.run.trajectory) {
    if (r.t > fit_window + 1e-9) break;
    t.push_back(r.t);
    l2.push_back(r.l2);
  }
  out.growth_rate = fit_log_slope(t, l2);
  return out;
}

}  // namespace qc
