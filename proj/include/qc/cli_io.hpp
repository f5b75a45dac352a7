#pragma once

// Run configuration, snapshot and diagnostics files, raster export and the
// simulation drivers behind the qcsim command line.

#include "qc/brusselator.hpp"
#include "qc/error.hpp"
#include "qc/etd.hpp"
#include "qc/hull_field.hpp"
#include "qc/record.hpp"
#include "qc/sh_dynamics.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qc {

/// Config errors carry the offending line (0 for missing keys).
class ConfigError : public Error {
 public:
  ConfigError(ErrorCode code, int line, const std::string& what)
      : Error(code, "line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

enum class Equation { SwiftHohenberg, Brusselator };

struct RunConfig {
  std::string symmetry;
  std::optional<Eigen::VectorXd> k0;
  int N = 3;
  double K_max = std::numeric_limits<double>::infinity();
  int relation_bound = 2;
  double k_scale = 1.0;
  Equation equation = Equation::SwiftHohenberg;
  double lambda = 0.0;
  double A = 0.0, B = 0.0, d1 = 0.0, d2 = 0.0;
  double dt = 0.01;
  double T = 0.0;
  Scheme scheme = Scheme::Etdrk2;
  double phi_threshold = 1e-2;
  int dealias = 2;
  /// quasicrystal | random | steady-plus-critical | file:<path>
  std::string ic = "quasicrystal";
  double ic_amplitude = 0.5;
  double perturbation = 0.0;
  /// Absolute l2 of the initial field; overrides ic_amplitude when set.
  std::optional<double> ic_l2;
  std::uint64_t seed = 1;
  int diag_every = 10;
  /// Steps between snapshots (multiple of diag_every); 0 writes only the final state.
  int snapshot_every = 0;
  double s = 3.0;
  std::string output = "out";
};

/// key = value lines, '#' starts a comment. Throws ConfigError (UnknownKey, BadValue).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
/// Canonical text form; parse_config(config_text(c)) reproduces c.
std::string config_text(const RunConfig& config);

/// Holohedry, module (scaled by k_scale) and active set described by a config.
ModeSetPtr build_modes(const RunConfig& config);

struct Snapshot {
  RunConfig config;
  double t = 0.0;
  std::vector<HullField> components;  ///< u, or (u, v) for the Brusselator
};

inline constexpr int kSnapshotFormatVersion = 1;

void write_snapshot(const Snapshot& snapshot, const std::filesystem::path& path);
/// Rebuilds the module from the manifest and checks it against the stored
/// generators. Throws FormatVersionMismatch, CorruptPayload, ManifestMismatch.
Snapshot read_snapshot(const std::filesystem::path& path);

std::string diagnostics_csv(const Trajectory& trajectory);
void write_diagnostics_csv(const Trajectory& trajectory, const std::filesystem::path& path);
Trajectory parse_diagnostics_csv(std::string_view text);

std::string pgm_bytes(const Raster& raster);
void export_raster(const HullField& field, double lo, double hi, int resolution,
                   const std::filesystem::path& path);

HullField initial_sh_field(const RunConfig& config, const ModeSetPtr& modes);
BrusselatorState initial_bruss_state(const RunConfig& config, const ModeSetPtr& modes);

struct RunSummary {
  Trajectory trajectory;
  std::filesystem::path directory;
  std::vector<std::filesystem::path> snapshots;
};

/// Runs the configured equation, writing config.txt, diagnostics.csv and
/// snapshots into config.output.
RunSummary run_simulation(const RunConfig& config);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace qc
