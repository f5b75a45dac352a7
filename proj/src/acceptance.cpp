#include "qc/acceptance.hpp"

#include "qc/brusselator.hpp"
#include "qc/cli_io.hpp"
#include "qc/diagnostics.hpp"
#include "qc/sh_dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <optional>
#include <random>
#include <sys/wait.h>
#include <unistd.h>

namespace qc {

namespace fs = std::filesystem;

namespace {

constexpr double kDt = 0.01;

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

void add(CriterionResult& r, const CheckReport& c) {
  r.details.push_back(format_report(c));
  r.passed = r.passed && c.passed;
}

void fail(CriterionResult& r, const std::string& why) {
  r.details.push_back("FAIL " + why);
  r.passed = false;
}

Trajectory until(const Trajectory& tr, double t_max) {
  Trajectory out;
  for (const auto& rec : tr) {
    if (rec.t <= t_max + 1e-9) out.push_back(rec);
  }
  return out;
}

ModeSetPtr modes_for(const std::string& symmetry, int N, double k_scale = 1.0) {
  RunConfig c;
  c.symmetry = symmetry;
  c.N = N;
  c.k_scale = k_scale;
  return build_modes(c);
}

IntegrationResult run_sh(const HullField& u0, double lambda, double duration, int diag_every,
                         Scheme scheme = Scheme::Etdrk2, double dt = kDt) {
  SolverState s{u0, 0.0, {lambda}, {scheme, dt, 1e-2}};
  IntegrateOptions o;
  o.diag_every = diag_every;
  return integrate(std::move(s), duration, o);
}

double angle_between(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double c = std::abs(a.normalized().dot(b.normalized()));
  const double s = std::abs(a.normalized()[0] * b.normalized()[1] - a.normalized()[1] * b.normalized()[0]);
  return std::atan2(s, c);
}

class Suite {
 public:
  explicit Suite(const AcceptanceOptions& options) : options_(options) {}

  std::vector<CriterionResult> run() {
    const std::vector<std::pair<std::string, std::function<void(CriterionResult&)>>> criteria{
        {"exponential decay, lambda = -0.5", [this](auto& r) { decay_negative(r); }},
        {"polynomial decay, lambda = 0", [this](auto& r) { decay_zero(r); }},
        {"absorbing ball, lambda = 0.2", [this](auto& r) { absorbing(r); }},
        {"branch bounds", [this](auto& r) { branch(r); }},
        {"separation from constants", [this](auto& r) { separation(r); }},
        {"Lyapunov functional", [this](auto& r) { lyapunov(r); }},
        {"energy inequality", [this](auto& r) { energy_inequality(r); }},
        {"H1 growth", [this](auto& r) { h1(r); }},
        {"l1 control by H^s", [this](auto& r) { l1(r); }},
        {"dealiased products vs direct convolution", [this](auto& r) { oracle(r); }},
        {"stepper order", [this](auto& r) { order(r); }},
        {"symmetry preservation", [this](auto& r) { symmetry(r); }},
        {"quasicrystal classification", [this](auto& r) { classification(r); }},
        {"Turing analysis", [this](auto& r) { turing(r); }},
        {"Brusselator dynamics", [this](auto& r) { brusselator(r); }},
        {"group algebra", [this](auto& r) { group_algebra(r); }},
        {"IO layouts and verify", [this](auto& r) { io(r); }},
    };
    std::vector<CriterionResult> out;
    int id = 0;
    for (const auto& [title, body] : criteria) {
      CriterionResult r;
      r.id = ++id;
      r.title = title;
      r.passed = true;
      const auto start = std::chrono::steady_clock::now();
      try {
        body(r);
      } catch (const std::exception& e) {
        fail(r, std::string("exception: ") + e.what());
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (options_.progress) *options_.progress << format_criterion(r, options_.verbose) << std::flush;
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  const ModeSetPtr& twelvefold() {
    if (!d12_) d12_ = modes_for("dihedral:12", 3);
    return d12_;
  }

  // lambda = -0.5, random IC with l2 = 1, every step recorded.
  const Trajectory& negative() {
    if (!negative_) negative_ = run_sh(random_ic(twelvefold(), 1.0, 7), -0.5, 8.0, 1).trajectory;
    return *negative_;
  }
  // lambda = 0, twelvefold IC with l2 = 1.
  const Trajectory& zero() {
    if (!zero_) zero_ = run_sh(orbit_field(twelvefold(), 1.0), 0.0, 100.0, 10).trajectory;
    return *zero_;
  }
  // lambda = 0.2, default quasicrystal IC (l2 = sqrt(lambda) / 2), every step recorded.
  const Trajectory& main_run() {
    if (!main_) main_ = run_sh(quasicrystal_ic(twelvefold(), 0.2), 0.2, 50.0, 1).trajectory;
    return *main_;
  }
  // lambda = 0.2, twelvefold IC with l2 = 3 sqrt(lambda).
  const Trajectory& large() {
    if (!large_) large_ = run_sh(orbit_field(twelvefold(), 3.0 * std::sqrt(0.2)), 0.2, 50.0, 10).trajectory;
    return *large_;
  }

  void decay_negative(CriterionResult& r) { add(r, check_decay_negative_lambda(negative(), -0.5)); }

  void decay_zero(CriterionResult& r) { add(r, check_decay_zero_lambda(zero())); }

  void absorbing(CriterionResult& r) {
    const auto inside = check_absorbing_ball(main_run(), 0.2, 0.1);
    if (inside.invariance) {
      add(r, *inside.invariance);
    } else {
      fail(r, "default IC does not start inside sqrt(lambda)");
    }
    add(r, inside.stays_inside);
    const auto outside = check_absorbing_ball(large(), 0.2, 0.1);
    add(r, outside.stays_inside);
    const double spacing = 10 * kDt;
    add(r, make_report("entry no later than logistic comparison", outside.entry_time - outside.comparison_time,
                       outside.entry_time, spacing,
                       fmt("l2(0) = 3 sqrt(lambda); entry t=%.3f, comparison t=%.3f", outside.entry_time,
                           outside.comparison_time)));
  }

  void branch(CriterionResult& r) {
    add(r, check_upper_branch_bound(main_run(), 0.2));
    add(r, check_lower_branch_bound(main_run(), 0.2, 0.05));
  }

  void separation(CriterionResult& r) {
    add(r, check_separation(main_run(), 0.1 * std::sqrt(0.2)));
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& rec : main_run()) worst = std::min(worst, 0.5 * (rec.max_u - rec.min_u));
    r.details.push_back(fmt("     min over samples of (max - min)/2 = %.6f on the %d^4 dealiasing grid", worst,
                            dealias_points(*twelvefold())));
  }

  void lyapunov(CriterionResult& r) {
    const auto rep = check_lyapunov(main_run(), kDt);
    add(r, rep.monotonicity);
    add(r, rep.identity);
  }

  void energy_inequality(CriterionResult& r) {
    for (auto [tr, lambda, label] : {std::tuple{&negative(), -0.5, "lambda = -0.5"}, std::tuple{&zero(), 0.0, "lambda = 0"},
                                     std::tuple{&main_run(), 0.2, "lambda = 0.2"},
                                     std::tuple{&large(), 0.2, "lambda = 0.2, l2(0) = 3 sqrt(lambda)"}}) {
      auto rep = check_energy_inequality(*tr, lambda, kDt);
      rep.note = label;
      add(r, rep);
    }
  }

  void h1(CriterionResult& r) { add(r, check_h1_growth(until(main_run(), 20.0), 0.2)); }

  void l1(CriterionResult& r) {
    const double c = l1_hs_bound_constant(*twelvefold(), 3.0);
    r.details.push_back(fmt("     C(3) = %.12f over %zu active modes", c, twelvefold()->size()));
    for (const Trajectory* tr : {&negative(), &zero(), &main_run(), &large()}) add(r, check_l1_control(*tr, c));
  }

  void oracle(CriterionResult& r) {
    for (const char* symmetry : {"dihedral:4", "dihedral:6"}) {
      const auto modes = modes_for(symmetry, 2);
      if (modes->rank() != 2) fail(r, std::string(symmetry) + " does not have rank 2");
      const HullField u = random_ic(modes, 1.0, 11);
      const HullField v = random_ic(modes, 1.0, 12);
      const double cube = (triple_product(u, u, u).coefficients() - cubic_direct(u).coefficients()).cwiseAbs().maxCoeff();
      const double uuv =
          (bruss_nonlinear(u, v).coefficients() - triple_convolution_direct(u, u, v).coefficients()).cwiseAbs().maxCoeff();
      add(r, make_report(std::string("u^3 on ") + symmetry + ", N = 2", cube, 0.0, 1e-12));
      add(r, make_report(std::string("u^2 v on ") + symmetry + ", N = 2", uuv, 0.0, 1e-12));
    }
  }

  void order(CriterionResult& r) {
    const double lambda = 0.3;
    const HullField u0 = quasicrystal_ic(twelvefold(), lambda);
    const std::vector<double> dts{0.025, 0.0125, 0.00625};
    const int never = 1 << 30;
    const HullField reference =
        run_sh(u0, lambda, 1.0, never, Scheme::Etdrk4, dts.back() / 64).final_state.field;
    for (auto [scheme, target] : {std::pair{Scheme::Etdrk2, 1.9}, std::pair{Scheme::Etdrk4, 3.8}}) {
      std::vector<double> errors;
      for (double dt : dts) errors.push_back(l2_norm(run_sh(u0, lambda, 1.0, never, scheme, dt).final_state.field - reference));
      std::string note = "errors";
      for (double e : errors) note += fmt(" %.3e", e);
      note += "; orders";
      for (std::size_t i = 1; i < errors.size(); ++i) note += fmt(" %.3f", std::log2(errors[i - 1] / errors[i]));
      const double finest = std::log2(errors[errors.size() - 2] / errors.back());
      add(r, make_report(std::string(to_string(scheme)) + " order deficit (target - observed)", target - finest,
                         dts.back(), 0.0, note));
    }
  }

  void symmetry(CriterionResult& r) {
    add(r, check_symmetry(until(main_run(), 1000 * kDt), 1e-10));
    const auto ico = modes_for("icosahedral", 1);
    const auto run = run_sh(quasicrystal_ic(ico, 0.2), 0.2, 1000 * kDt, 100);
    auto rep = check_symmetry(run.trajectory, 1e-10);
    rep.note = fmt("icosahedral, p = %d, %zu modes", ico->rank(), ico->size());
    add(r, rep);
  }

  void classification(CriterionResult& r) {
    const auto run = run_sh(quasicrystal_ic(twelvefold(), 0.2, 0.5, 1e-3, 5), 0.2, 10.0, 100);
    std::vector<double> grid;
    for (int e = 1; e <= 9; ++e) grid.push_back(std::pow(10.0, -e));
    const auto q = classify_quasicrystal(run.final_state.field, grid, 2.0, 0.5);
    r.details.push_back(fmt("     non-constant=%d (i)=%d (ii)=%d at eps=%.0e [integer rank %d, real rank %d] "
                            "(iii)=%d at eps=%.0e",
                            !q.spatially_constant, q.condition_i, q.condition_ii, q.condition_ii_eps,
                            q.support_integer_rank, q.support_real_rank, q.condition_iii, q.condition_iii_eps));
    if (!q.is_quasicrystal()) fail(r, "evolved field is not classified as a quasicrystal");
    if (!q.condition_ii) fail(r, "condition (ii) fails");
    if (!(q.condition_iii && q.condition_iii_eps > 1e-10)) fail(r, "condition (iii) fails at M = 2, r = 0.5");
  }

  void turing(CriterionResult& r) {
    const auto t = turing_analysis(2.0, 0.25, 1.0);
    add(r, make_report("B_c vs 4", std::abs(t.B_c - 4.0) / 4.0, 0.0, 1e-8, fmt("scan B_c = %.15g", t.B_c)));
    add(r, make_report("k_c vs 2", std::abs(t.k_c - 2.0) / 2.0, 0.0, 1e-8, fmt("scan k_c = %.15g", t.k_c)));
    add(r, make_report("closed-form B_c vs scan", std::abs(t.B_c_closed - t.B_c) / t.B_c, 0.0, 1e-8));
    add(r, make_report("closed-form k_c vs scan", std::abs(t.k_c_closed - t.k_c) / t.k_c, 0.0, 1e-8));
    add(r, make_report("eigenvector angle to (-2, 1)", angle_between(t.eigenvector, Eigen::Vector2d(-2.0, 1.0)), 0.0,
                       1e-6, fmt("(%.9f, %.9f)", t.eigenvector[0], t.eigenvector[1])));
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> a_dist(0.5, 3.0), d1_dist(0.05, 0.5), d2_dist(1.0, 5.0);
    double worst_b = 0.0, worst_k = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double A = a_dist(rng), d1 = d1_dist(rng), d2 = d2_dist(rng);
      const auto s = turing_analysis(A, d1, d2);
      worst_b = std::max(worst_b, std::abs(s.B_c - s.B_c_closed) / s.B_c_closed);
      worst_k = std::max(worst_k, std::abs(s.k_c - s.k_c_closed) / s.k_c_closed);
    }
    add(r, make_report("20 random triples: B_c vs (1 + A eta)^2", worst_b, 0.0, 1e-8));
    r.details.push_back(fmt("     20 random triples: worst relative k_c deviation %.3e (reported)", worst_k));
  }

  void brusselator(CriterionResult& r) {
    const double A = 2.0, d1 = 0.25, d2 = 1.0;
    const auto t = turing_analysis(A, d1, d2);
    const auto modes = modes_for("dihedral:12", 3, t.k_c_closed);
    BrusselatorOptions opts;
    opts.diag_every = 10;

    {
      const BrusselatorParams p{A, 3.5, d1, d2};
      const BrusselatorState s0 = steady_state_fields(modes, p);
      double drift = 0.0;
      opts.observer = [&](const BrusselatorState& s) {
        drift = std::max(drift, (s.u.coefficients() - s0.u.coefficients()).cwiseAbs().maxCoeff());
        drift = std::max(drift, (s.v.coefficients() - s0.v.coefficients()).cwiseAbs().maxCoeff());
      };
      bruss_integrate(s0, 10.0, opts);
      add(r, make_report("steady state drift over T = 10", drift, 10.0, 1e-12));
    }
    {
      const BrusselatorParams p{A, 1.05 * t.B_c, d1, d2};
      Eigen::EigenSolver<Eigen::Matrix2d> es(dispersion_matrix(p, t.k_c_closed * t.k_c_closed));
      Eigen::Index top = 0;
      es.eigenvalues().real().maxCoeff(&top);
      const double sigma = es.eigenvalues()[top].real();
      const Eigen::Vector2d dir = es.eigenvectors().col(top).real().normalized();
      ModeIndex e0 = ModeIndex::Zero(modes->rank());
      e0[0] = 1;
      std::vector<double> times, amps;
      opts.observer = [&](const BrusselatorState& s) {
        if (s.t >= 1.0 - 1e-9) {
          times.push_back(s.t);
          amps.push_back(std::abs(s.u.get(e0)));
        }
      };
      bruss_integrate(steady_plus_orbit(modes, p, dir, 1e-6), 10.0, opts);
      const double rate = fit_log_slope(times, amps);
      add(r, make_report("critical-mode growth rate vs dispersion eigenvalue", std::abs(rate - sigma) / std::abs(sigma),
                         10.0, 0.05, fmt("B = 1.05 B_c, measured %.6f, predicted %.6f", rate, sigma)));
    }
    for (auto [B, amplitude] : {std::pair{1.05 * t.B_c, 0.1}, std::pair{3.5, 0.15}}) {
      const BrusselatorParams p{A, B, d1, d2};
      const BrusselatorState s0 = steady_plus_orbit(modes, p, t.eigenvector, amplitude);
      const double start = positivity_check(s0, dealias_points(*modes));
      opts.observer = nullptr;
      const auto run = bruss_integrate(s0, 10.0, opts);
      double lowest = std::numeric_limits<double>::infinity(), at = 0.0;
      for (const auto& rec : run.trajectory) {
        const double m = std::min(rec.min_u, rec.min_v);
        if (m < lowest) {
          lowest = m;
          at = rec.t;
        }
      }
      if (!(start > 0.0)) fail(r, "positivity IC is not positive");
      add(r, make_report("positivity: -min(u, v) on the grid", -lowest, at, 1e-6,
                         fmt("B = %.3f, amplitude %.2f, initial min %.4f", B, amplitude, start)));
    }
  }

  void group_algebra(CriterionResult& r) {
    for (const char* symmetry : {"dihedral:8", "dihedral:12", "icosahedral"}) {
      const auto h = std::make_shared<const Holohedry>(build_holohedry(symmetry));
      const auto module = generate_frequency_module(*h, Eigen::VectorXd::Unit(h->dimension(), 0));
      const auto& reps = module.integer_reps();
      long mismatches = 0;
      for (std::size_t i = 0; i < h->order(); ++i) {
        for (std::size_t j = 0; j < h->order(); ++j) {
          if (reps[i] * reps[j] != reps[h->product(i, j)]) ++mismatches;
        }
      }
      add(r, make_report(fmt("M_g M_h = M_gh over %s (order %zu, p = %d)", symmetry, h->order(), module.rank()),
                         static_cast<double>(mismatches), 0.0, 0.0));
    }
    for (const char* family : {"cyclic", "dihedral"}) {
      for (int q : {2, 4, 6, 8, 10, 12}) {
        const std::string symmetry = fmt("%s:%d", family, q);
        const auto h = build_holohedry(symmetry);
        const auto module = generate_frequency_module(h, Eigen::Vector2d(1.0, 0.0));
        const bool expected = q <= 6;
        add(r, make_report(fmt("%s uniformly discrete = %s", symmetry.c_str(), expected ? "yes" : "no"),
                           module.uniformly_discrete() == expected ? 0.0 : 1.0, 0.0, 0.0, fmt("p = %d", module.rank())));
      }
    }
    const auto ico = build_holohedry("icosahedral");
    const auto module = generate_frequency_module(ico, Eigen::Vector3d(1.0, 0.0, 0.0));
    add(r, make_report("icosahedral uniformly discrete = no", module.uniformly_discrete() ? 1.0 : 0.0, 0.0, 0.0,
                       fmt("p = %d", module.rank())));
  }

  void io(CriterionResult& r) {
    fs::path dir = options_.scratch;
    if (dir.empty()) dir = fs::temp_directory_path() / fmt("qc_acceptance_%d", static_cast<int>(::getpid()));
    fs::create_directories(dir);

    RunConfig c = parse_config("symmetry = dihedral:12\nlambda = 0.2\nT = 1\n");
    const auto modes = build_modes(c);
    const HullField u = random_ic(modes, 1.0, 3);
    write_snapshot({c, 1.25, {u}}, dir / "sh.bin");
    const Snapshot back = read_snapshot(dir / "sh.bin");
    const bool sh_exact = back.t == 1.25 && back.components.size() == 1 &&
                          std::memcmp(back.components[0].coefficients().data(), u.coefficients().data(),
                                      sizeof(Complex) * modes->size()) == 0 &&
                          back.components[0].module().integer_reps() == modes->module().integer_reps() &&
                          back.components[0].module().generators() == modes->module().generators();
    add(r, make_report("Swift-Hohenberg snapshot round trip bit-exact", sh_exact ? 0.0 : 1.0, 0.0, 0.0));

    RunConfig cb = parse_config("symmetry = dihedral:12\nequation = brusselator\nA = 2\nB = 4.2\nd1 = 0.25\nd2 = 1\nT = 1\nk_scale = 2\n");
    const auto bmodes = build_modes(cb);
    const HullField bu = random_ic(bmodes, 1.0, 4), bv = random_ic(bmodes, 2.0, 5);
    write_snapshot({cb, 0.5, {bu, bv}}, dir / "bruss.bin");
    const Snapshot bback = read_snapshot(dir / "bruss.bin");
    const std::size_t bytes = sizeof(Complex) * bmodes->size();
    const bool bruss_exact = bback.components.size() == 2 &&
                             std::memcmp(bback.components[0].coefficients().data(), bu.coefficients().data(), bytes) == 0 &&
                             std::memcmp(bback.components[1].coefficients().data(), bv.coefficients().data(), bytes) == 0;
    const auto file_size = fs::file_size(dir / "bruss.bin");
    const std::string raw = read_file(dir / "bruss.bin");
    const auto payload = raw.size() - (raw.find("end_manifest\n") + 13);
    add(r, make_report("Brusselator snapshot round trip bit-exact", bruss_exact ? 0.0 : 1.0, 0.0, 0.0,
                       fmt("payload %zu bytes of %ju", static_cast<std::size_t>(payload), static_cast<std::uintmax_t>(file_size))));
    add(r, make_report("payload = 16 bytes x modes x components",
                       static_cast<double>(payload) == 32.0 * static_cast<double>(bmodes->size()) ? 0.0 : 1.0, 0.0, 0.0));

    DiagnosticsRecord rec;
    rec.t = 0.5;
    rec.l2 = 1.0;
    rec.l1 = 0.1;
    rec.hs = 2.5;
    rec.energy = -0.25;
    rec.rhs_l2 = 1e-20;
    rec.grad_hull_sq = 3.0;
    rec.sym_drift = 0.0;
    rec.min_u = -1.5;
    rec.max_u = 1.0 / 3.0;
    const std::string csv = diagnostics_csv({rec});
    const std::string expected_csv =
        "t,l2,l1,hs,energy,rhs_l2,grad_hull_sq,sym_drift,min_u,max_u\n"
        "0.5,1,0.10000000000000001,2.5,-0.25,9.9999999999999995e-21,3,0,-1.5,0.33333333333333331\n";
    add(r, make_report("CSV bytes", csv == expected_csv ? 0.0 : 1.0, 0.0, 0.0));
    const bool csv_back = parse_diagnostics_csv(csv) == Trajectory{rec} &&
                          diagnostics_csv({}) == "t,l2,l1,hs,energy,rhs_l2,grad_hull_sq,sym_drift,min_u,max_u\n";
    add(r, make_report("CSV parses back exactly; empty trajectory gives the header", csv_back ? 0.0 : 1.0, 0.0, 0.0));

    const auto square = modes_for("dihedral:4", 2);
    HullField constant(square);
    constant.set(ModeIndex::Zero(2), 0.75);
    export_raster(constant, -5.0, 5.0, 16, dir / "constant.pgm");
    const std::string pgm = read_file(dir / "constant.pgm");
    const std::string header = "P5\n16 16\n255\n";
    const bool pgm_ok = pgm.size() == header.size() + 256 && pgm.compare(0, header.size(), header) == 0 &&
                        std::all_of(pgm.begin() + static_cast<long>(header.size()), pgm.end(),
                                    [](char ch) { return static_cast<unsigned char>(ch) == 128; });
    add(r, make_report("PGM header and constant field = 128", pgm_ok ? 0.0 : 1.0, 0.0, 0.0));

    if (!options_.qcsim.empty()) {
      const fs::path log = dir / "verify.log";
      const std::string cmd = "\"" + options_.qcsim.string() + "\" verify > \"" + log.string() + "\" 2>&1";
      const int status = std::system(cmd.c_str());
      const int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
      add(r, make_report("qcsim verify exit status", static_cast<double>(code), 0.0, 0.0, log.string()));
    } else {
      r.details.push_back("     qcsim verify exit status: this run is the verify run");
    }
    if (options_.scratch.empty()) {
      std::error_code ec;
      if (r.passed) fs::remove_all(dir, ec);
    }
  }

  AcceptanceOptions options_;
  ModeSetPtr d12_;
  std::optional<Trajectory> negative_, zero_, main_, large_;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) { return Suite(options).run(); }

std::string format_criterion(const CriterionResult& r, bool verbose) {
  std::string out = fmt("%s [%2d] %s (%.1f s)\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
  if (verbose) {
    for (const auto& d : r.details) out += "       " + d + "\n";
  }
  return out;
}

}  // namespace qc
