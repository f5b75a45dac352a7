#pragma once

// Swift-Hohenberg dynamics in hull form:
//   U_t = -(Delta~ + 1)^2 U + lambda U - U^3,
// where Delta~ multiplies mode m by -|k(m)|^2.

#include "qc/etd.hpp"
#include "qc/hull_field.hpp"
#include "qc/record.hpp"

#include <cstdint>
#include <functional>

namespace qc {

struct ShParams {
  double lambda = 0.0;
};

struct SolverState {
  HullField field;
  double t = 0.0;
  ShParams params;
  StepperConfig stepper;
};

/// sigma(m) = lambda - (|k(m)|^2 - 1)^2.
double linear_symbol(const FrequencyModule& module, const ModeIndex& m, double lambda);
Eigen::VectorXd linear_symbols(const ActiveModeSet& modes, double lambda);

/// sigma * a - [u^3], the cubic from one dealiased grid pass.
HullField rhs(const HullField& field, double lambda, int padding = 2);

/// Brute-force sum over k' + k'' + k''' = k of f_{k'} g_{k''} h_{k'''}, all
/// three indices active. Throws TooLarge above 1e4 pairs per output mode.
HullField triple_convolution_direct(const HullField& f, const HullField& g, const HullField& h);
HullField cubic_direct(const HullField& field);

/// One exponential integrator step of size dt (exact linear factor, phi-function
/// nonlinear increments). Throws NonFiniteStateError on blow-up.
SolverState step(const SolverState& state, double dt);

/// H-symmetric field on the orbit of k0 scaled to l2 = target_l2. With
/// noise_amplitude > 0, seeded uniform noise of that size is added to every
/// active mode before symmetrizing and rescaling.
HullField orbit_field(const ModeSetPtr& modes, double target_l2, double noise_amplitude = 0.0,
                      std::uint64_t seed = 1);

/// Orbit initial condition with l2 = rho * sqrt(lambda) and noise delta * sqrt(lambda).
HullField quasicrystal_ic(const ModeSetPtr& modes, double lambda, double rho = 0.5,
                          double delta = 0.0, std::uint64_t seed = 1);

/// Hermitian field with uniform random coefficients on all active modes, scaled to target_l2.
HullField random_ic(const ModeSetPtr& modes, double target_l2, std::uint64_t seed = 1);

struct IntegrateOptions {
  int diag_every = 10;
  double sobolev_index = 3.0;
  int padding = 2;
  /// Called with every recorded state, after the record is taken.
  std::function<void(const SolverState&)> observer;
};

struct IntegrationResult {
  SolverState final_state;
  Trajectory trajectory;
};

/// Steps to t0 + T, recording at t0, every diag_every steps, and at the end.
/// A NonFiniteStateError carries the blow-up time.
IntegrationResult integrate(SolverState state, double duration, const IntegrateOptions& options = {});

struct BranchGrowthResult {
  IntegrationResult run;
  double growth_rate = 0.0;
};

/// Integrates from l2 = delta on the symmetrized critical orbit and fits the
/// exponential rate of l2 over t in [0, fit_window].
BranchGrowthResult branch_growth(const ModeSetPtr& modes, double lambda, double delta,
                                 double duration, const StepperConfig& stepper = {},
                                 double fit_window = 5.0);

/// Least-squares slope of log(values) against times (entries with value <= 0 skipped).
double fit_log_slope(const std::vector<double>& times, const std::vector<double>& values);

}  // namespace qc
