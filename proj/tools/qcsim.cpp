// qcsim: command-line front end for the hull-space solvers.

#include "qc/acceptance.hpp"
#include "qc/brusselator.hpp"
#include "qc/cli_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

int simulate(const std::string& path, const std::string& output, qc::Equation expected) {
  qc::RunConfig config = qc::load_config(path);
  if (!output.empty()) config.output = output;
  if (config.equation != expected) {
    std::cerr << "config describes the other equation; use "
              << (config.equation == qc::Equation::Brusselator ? "simulate-bruss" : "simulate-sh") << "\n";
    return 1;
  }
  const auto summary = qc::run_simulation(config);
  const auto& last = summary.trajectory.back();
  std::printf("output = %s\nrecords = %zu\nsnapshots = %zu\nt = %.17g\nl2 = %.17g\n",
              summary.directory.c_str(), summary.trajectory.size(), summary.snapshots.size(), last.t, last.l2);
  return 0;
}

int turing(double A, double d1, double d2) {
  const auto t = qc::turing_analysis(A, d1, d2);
  std::printf("B_c = %.15g\nk_c = %.15g\nB_c_closed = %.15g\nk_c_closed = %.15g\neta = %.15g\n", t.B_c, t.k_c,
              t.B_c_closed, t.k_c_closed, t.eta);
  std::printf("hopf_threshold = %.15g\neigenvector = %.15g %.15g\nturing_first = %s\n", t.hopf_threshold,
              t.eigenvector[0], t.eigenvector[1], t.turing_first ? "true" : "false");
  return 0;
}

int render(const std::string& snapshot, const std::string& out, double lo, double hi, int resolution,
           int component) {
  const auto snap = qc::read_snapshot(snapshot);
  if (component < 0 || component >= static_cast<int>(snap.components.size())) {
    std::cerr << "snapshot has " << snap.components.size() << " component(s)\n";
    return 1;
  }
  qc::export_raster(snap.components[static_cast<std::size_t>(component)], lo, hi, resolution, out);
  std::printf("wrote %s (%dx%d)\n", out.c_str(), resolution, resolution);
  return 0;
}

int verify(bool quiet) {
  qc::AcceptanceOptions options;
  options.progress = &std::cout;
  options.verbose = !quiet;
  const auto results = qc::run_acceptance(options);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swift-Hohenberg and Brusselator dynamics on quasicrystal hulls", "qcsim"};
  app.require_subcommand(1, 1);

  std::string config_path, output;
  auto* sh = app.add_subcommand("simulate-sh", "integrate Swift-Hohenberg from a config file");
  sh->add_option("config", config_path, "key = value config file")->required();
  sh->add_option("-o,--output", output, "override the output directory");
  auto* br = app.add_subcommand("simulate-bruss", "integrate the Brusselator from a config file");
  br->add_option("config", config_path, "key = value config file")->required();
  br->add_option("-o,--output", output, "override the output directory");

  double A = 2.0, d1 = 0.25, d2 = 1.0;
  auto* tu = app.add_subcommand("turing", "Turing onset of the Brusselator");
  tu->add_option("--A", A, "feed rate")->capture_default_str();
  tu->add_option("--d1", d1, "activator diffusion")->capture_default_str();
  tu->add_option("--d2", d2, "inhibitor diffusion")->capture_default_str();

  std::string snapshot, pgm = "field.pgm";
  double lo = -30.0, hi = 30.0;
  int resolution = 512, component = 0;
  auto* re = app.add_subcommand("render", "snapshot to binary PGM (d = 2)");
  re->add_option("snapshot", snapshot, "snapshot file")->required();
  re->add_option("-o,--output", pgm, "PGM path")->capture_default_str();
  re->add_option("--lo", lo, "window lower corner")->capture_default_str();
  re->add_option("--hi", hi, "window upper corner")->capture_default_str();
  re->add_option("--resolution", resolution, "pixels per side")->capture_default_str();
  re->add_option("--component", component, "0 = u, 1 = v")->capture_default_str();

  bool quiet = false;
  auto* ve = app.add_subcommand("verify", "run the acceptance suite");
  ve->add_flag("-q,--quiet", quiet, "one line per criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*sh) return simulate(config_path, output, qc::Equation::SwiftHohenberg);
    if (*br) return simulate(config_path, output, qc::Equation::Brusselator);
    if (*tu) return turing(A, d1, d2);
    if (*re) return render(snapshot, pgm, lo, hi, resolution, component);
    if (*ve) return verify(quiet);
  } catch (const std::exception& e) {
    std::cerr << "qcsim: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
