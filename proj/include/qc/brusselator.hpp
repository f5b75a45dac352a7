#pragma once

// Brusselator in hull form:
//   u_t = d1 Delta u + A - (B + 1) u + u^2 v
//   v_t = d2 Delta v + B u - u^2 v
// stored in absolute variables (the zero mode carries the steady state).

#include "qc/etd.hpp"
#include "qc/hull_field.hpp"
#include "qc/record.hpp"

#include <Eigen/Dense>

#include <functional>
#include <utility>

namespace qc {

struct BrusselatorParams {
  double A = 1.0;
  double B = 1.0;
  double d1 = 1.0;
  double d2 = 1.0;

  double eta() const;
  void validate() const;
};

struct BrusselatorState {
  HullField u;
  HullField v;
  double t = 0.0;
  BrusselatorParams params;
  StepperConfig stepper;
};

/// (A, B / A).
std::pair<double, double> steady_state(const BrusselatorParams& params);

/// Linearization at the steady state for perturbations e^{ik.x} with |k|^2 = kappa_sq:
/// [[-d1 kappa^2 + B - 1, A^2], [-B, -d2 kappa^2 - A^2]].
Eigen::Matrix2d dispersion_matrix(const BrusselatorParams& params, double kappa_sq);

struct TuringReport {
  double eta = 0.0;
  double B_c = 0.0;          ///< from the dispersion scan
  double k_c = 0.0;          ///< from the dispersion scan
  double B_c_closed = 0.0;   ///< (1 + A eta)^2
  double k_c_closed = 0.0;   ///< (A / sqrt(d1 d2))^(1/2)
  double hopf_threshold = 0.0;  ///< 1 + A^2
  Eigen::Vector2d eigenvector = Eigen::Vector2d::Zero();  ///< unit kernel vector, v component >= 0
  bool turing_first = false;
};

/// Onset of the finite-wavelength instability: B_c is the root in B of
/// min_{kappa^2} det(dispersion_matrix), the inner minimum found by golden
/// section. Throws NoBracket when no interior minimum exists.
TuringReport turing_analysis(double A, double d1, double d2);

/// Golden-section minimizer of f on [lo, hi], polished with one parabolic step.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol = 1e-12);

/// [u^2 v] restricted to the active set (one padded-grid pass).
HullField bruss_nonlinear(const HullField& u, const HullField& v, int padding = 2);

std::pair<HullField, HullField> bruss_rhs(const BrusselatorState& state, int padding = 2);

/// Exponential integrator with per-mode linear block
/// [[-d1|k|^2 - (B+1), 0], [B, -d2|k|^2]] and explicit (A delta_0 + u^2 v, -u^2 v).
BrusselatorState bruss_step(const BrusselatorState& state, double dt);

struct BrusselatorOptions {
  int diag_every = 10;
  double sobolev_index = 3.0;
  int padding = 2;
  std::function<void(const BrusselatorState&)> observer;
};

struct BrusselatorResult {
  BrusselatorState final_state;
  Trajectory trajectory;
};

BrusselatorResult bruss_integrate(BrusselatorState state, double duration,
                                  const BrusselatorOptions& options = {});

/// Constant fields at the steady state on the given active set.
BrusselatorState steady_state_fields(const ModeSetPtr& modes, const BrusselatorParams& params,
                                     const StepperConfig& stepper = {});

/// Steady state plus amplitude * (eigenvector_u, eigenvector_v) on every index
/// of the k0 orbit (H-symmetric).
BrusselatorState steady_plus_orbit(const ModeSetPtr& modes, const BrusselatorParams& params,
                                   const Eigen::Vector2d& direction, double amplitude,
                                   const StepperConfig& stepper = {});

/// Minimum over the torus grid of both components.
double positivity_check(const BrusselatorState& state, int grid_resolution);

}  // namespace qc
