#pragma once

#include <vector>

namespace qc {

/// One time sample of the monitored quantities. For the Brusselator, norms
/// refer to the u component, energy is 0 (no gradient structure) and the
/// v extrema are filled in.
struct DiagnosticsRecord {
  double t = 0.0;
  double l2 = 0.0;
  double l1 = 0.0;
  double hs = 0.0;
  double energy = 0.0;
  double rhs_l2 = 0.0;
  double grad_hull_sq = 0.0;
  double sym_drift = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  bool has_v = false;
  double min_v = 0.0;
  double max_v = 0.0;

  bool operator==(const DiagnosticsRecord&) const = default;
};

using Trajectory = std::vector<DiagnosticsRecord>;

}  // namespace qc
