#pragma once

// Diagnostics records and the inequality / condition checkers run by the
// acceptance suite. All checks are pure functions of a trajectory.

#include "qc/brusselator.hpp"
#include "qc/hull_field.hpp"
#include "qc/record.hpp"
#include "qc/sh_dynamics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qc {

struct RecordOptions {
  double sobolev_index = 3.0;
  int padding = 2;
  /// Points per axis for min/max; 0 selects the dealiasing grid.
  int grid_points = 0;
};

DiagnosticsRecord record(const SolverState& state, const RecordOptions& options = {});
DiagnosticsRecord record(const BrusselatorState& state, const RecordOptions& options = {});

/// passed <=> worst_slack <= tolerance.
struct CheckReport {
  std::string name;
  bool passed = false;
  double worst_slack = 0.0;
  double t_worst = 0.0;
  double tolerance = 0.0;
  std::string note;
};

CheckReport make_report(std::string name, double worst_slack, double t_worst, double tolerance,
                        std::string note = {});
std::string format_report(const CheckReport& report);

/// max_t l2(t) - e^{lambda t} l2(0); tolerance 1e-9.
CheckReport check_decay_negative_lambda(const Trajectory& trajectory, double lambda);

/// max_t l2(t)^2 - N0 / (1 + N0 t); tolerance 1e-9.
CheckReport check_decay_zero_lambda(const Trajectory& trajectory);

struct AbsorbingBallReport {
  CheckReport stays_inside;              ///< after first entry into (1+eps) sqrt(lambda)
  std::optional<CheckReport> invariance;  ///< when l2(0) <= sqrt(lambda)
  double entry_time = 0.0;
  /// Time at which the logistic comparison N' = N (lambda - N) reaches (1+eps)^2 lambda.
  double comparison_time = 0.0;
};

/// Throws NeverEnters if no sample lies inside (1 + eps) sqrt(lambda).
AbsorbingBallReport check_absorbing_ball(const Trajectory& trajectory, double lambda, double eps);

struct LyapunovReport {
  CheckReport monotonicity;  ///< max per-step increase of P; tolerance 10 dt^3
  CheckReport identity;      ///< max |dP/dt + ||u_t||^2| at midpoints; tolerance C dt
};

LyapunovReport check_lyapunov(const Trajectory& trajectory, double dt);

/// Finite-difference dN/dt <= N (lambda - N) with N = l2^2, the right side
/// maximized over the interval's N range; tolerance 10 dt^2 + 1e-9.
CheckReport check_energy_inequality(const Trajectory& trajectory, double lambda, double dt);

/// grad_hull_sq(t) - e^{2 lambda t} grad_hull_sq(0); tolerance 1e-9.
CheckReport check_h1_growth(const Trajectory& trajectory, double lambda);

/// l1 - C hs at every sample; tolerance 1e-12.
CheckReport check_l1_control(const Trajectory& trajectory, double bound_constant);

/// max_t l2(t) - sqrt(lambda); tolerance 1e-9. Note carries inf_t l2 / sqrt(lambda).
CheckReport check_upper_branch_bound(const Trajectory& trajectory, double lambda);
/// floor - inf_t l2(t) / sqrt(lambda); tolerance 0.
CheckReport check_lower_branch_bound(const Trajectory& trajectory, double lambda, double floor);

/// threshold - (max_u - min_u) / 2 at each sample; tolerance 0.
CheckReport check_separation(const Trajectory& trajectory, double threshold);

/// max_t sym_drift(t); tolerance as given.
CheckReport check_symmetry(const Trajectory& trajectory, double tolerance);

struct QuasicrystalReport {
  bool spatially_constant = true;
  bool condition_i = false;  ///< l1 finite (always, for a truncated field)
  bool condition_ii = false;
  double condition_ii_eps = 0.0;  ///< largest grid eps for which (ii) holds
  int support_integer_rank = 0;
  int support_real_rank = 0;
  bool condition_iii = false;
  double condition_iii_eps = 0.0;  ///< largest grid eps for which (iii) holds
  int coefficient_bound = 0;
  bool is_quasicrystal() const { return !spatially_constant && condition_i && condition_ii; }
};

/// Ranks are those of the support's integer span (over Q) and of its
/// wavevectors (over R); (ii) holds when the integer rank exceeds the real rank.
QuasicrystalReport classify_quasicrystal(const HullField& field, const std::vector<double>& eps_grid,
                                         double radius, double r);

}  // namespace qc
