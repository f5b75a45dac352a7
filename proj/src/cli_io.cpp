#include "qc/cli_io.hpp"

#include "qc/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace qc {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_doubles(std::string_view text) {
  std::vector<double> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    double v;
    if (!parse_number(token, v)) throw Error(ErrorCode::BadValue, "not a number: " + token);
    out.push_back(v);
  }
  return out;
}

struct Entry {
  std::string value;
  int line;
};

using EntryMap = std::map<std::string, Entry, std::less<>>;

EntryMap read_entries(std::string_view text) {
  EntryMap entries;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(ErrorCode::BadValue, line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(ErrorCode::BadValue, line_no, "empty key");
    if (entries.count(key)) throw ConfigError(ErrorCode::BadValue, line_no, "duplicate key '" + key + "'");
    entries.emplace(key, Entry{std::string(trim(line.substr(eq + 1))), line_no});
  }
  return entries;
}

const char* equation_name(Equation e) { return e == Equation::Brusselator ? "brusselator" : "sh"; }

bool valid_ic(const std::string& ic) {
  return ic == "quasicrystal" || ic == "random" || ic == "steady-plus-critical" || ic.rfind("file:", 0) == 0;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  const EntryMap entries = read_entries(text);
  RunConfig c;
  std::map<std::string, int, std::less<>> seen;

  auto bad = [](const Entry& e, const std::string& what) { return ConfigError(ErrorCode::BadValue, e.line, what); };
  auto real = [&](const Entry& e, const char* key) {
    double v;
    if (!parse_number(e.value, v) || std::isnan(v)) throw bad(e, std::string(key) + " expects a number");
    return v;
  };
  auto integer = [&](const Entry& e, const char* key) {
    long long v;
    if (!parse_number(e.value, v) || v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      throw bad(e, std::string(key) + " expects an integer");
    }
    return static_cast<int>(v);
  };

  for (const auto& [key, e] : entries) {
    seen[key] = e.line;
    if (key == "symmetry") {
      c.symmetry = e.value;
    } else if (key == "k0") {
      std::vector<double> v;
      try {
        v = parse_doubles(e.value);
      } catch (const Error&) {
        throw bad(e, "k0 expects a list of numbers");
      }
      if (v.empty()) throw bad(e, "k0 is empty");
      c.k0 = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    } else if (key == "N") {
      c.N = integer(e, "N");
      if (c.N < 0) throw bad(e, "N must be >= 0");
    } else if (key == "K_max") {
      c.K_max = real(e, "K_max");
      if (!(c.K_max > 0.0)) throw bad(e, "K_max must be positive");
    } else if (key == "relation_bound") {
      c.relation_bound = integer(e, "relation_bound");
      if (c.relation_bound < 2) throw bad(e, "relation_bound must be >= 2");
    } else if (key == "k_scale") {
      c.k_scale = real(e, "k_scale");
      if (!(c.k_scale > 0.0) || std::isinf(c.k_scale)) throw bad(e, "k_scale must be positive and finite");
    } else if (key == "equation") {
      if (e.value == "sh") c.equation = Equation::SwiftHohenberg;
      else if (e.value == "brusselator") c.equation = Equation::Brusselator;
      else throw bad(e, "equation must be sh or brusselator");
    } else if (key == "lambda") {
      c.lambda = real(e, "lambda");
      if (std::isinf(c.lambda)) throw bad(e, "lambda must be finite");
    } else if (key == "A" || key == "B" || key == "d1" || key == "d2") {
      const double v = real(e, key.c_str());
      if (!(v > 0.0) || std::isinf(v)) throw bad(e, key + " must be positive and finite");
      (key == "A" ? c.A : key == "B" ? c.B : key == "d1" ? c.d1 : c.d2) = v;
    } else if (key == "dt") {
      c.dt = real(e, "dt");
      if (!(c.dt > 0.0) || std::isinf(c.dt)) throw bad(e, "dt must be positive");
    } else if (key == "T") {
      c.T = real(e, "T");
      if (!(c.T >= 0.0) || std::isinf(c.T)) throw bad(e, "T must be >= 0 and finite");
    } else if (key == "scheme") {
      try {
        c.scheme = parse_scheme(e.value);
      } catch (const Error&) {
        throw bad(e, "scheme must be etdrk2 or etdrk4");
      }
    } else if (key == "phi_threshold") {
      c.phi_threshold = real(e, "phi_threshold");
      if (!(c.phi_threshold > 0.0 && c.phi_threshold < 1.0)) throw bad(e, "phi_threshold must lie in (0, 1)");
    } else if (key == "dealias") {
      c.dealias = integer(e, "dealias");
      if (c.dealias < 2) throw bad(e, "dealias must be >= 2");
    } else if (key == "ic") {
      c.ic = e.value;
      if (!valid_ic(c.ic)) throw bad(e, "unknown ic '" + c.ic + "'");
    } else if (key == "ic_amplitude") {
      c.ic_amplitude = real(e, "ic_amplitude");
      if (!(c.ic_amplitude > 0.0) || std::isinf(c.ic_amplitude)) throw bad(e, "ic_amplitude must be positive");
    } else if (key == "perturbation") {
      c.perturbation = real(e, "perturbation");
      if (!(c.perturbation >= 0.0) || std::isinf(c.perturbation)) throw bad(e, "perturbation must be >= 0");
    } else if (key == "ic_l2") {
      const double v = real(e, "ic_l2");
      if (!(v > 0.0) || std::isinf(v)) throw bad(e, "ic_l2 must be positive");
      c.ic_l2 = v;
    } else if (key == "seed") {
      if (!parse_number(e.value, c.seed)) throw bad(e, "seed expects a non-negative integer");
    } else if (key == "diag_every") {
      c.diag_every = integer(e, "diag_every");
      if (c.diag_every < 1) throw bad(e, "diag_every must be >= 1");
    } else if (key == "snapshot_every") {
      c.snapshot_every = integer(e, "snapshot_every");
      if (c.snapshot_every < 0) throw bad(e, "snapshot_every must be >= 0");
    } else if (key == "s") {
      c.s = real(e, "s");
      if (!(c.s > 0.0) || std::isinf(c.s)) throw bad(e, "s must be positive");
    } else if (key == "output") {
      if (e.value.empty()) throw bad(e, "output is empty");
      c.output = e.value;
    } else {
      throw ConfigError(ErrorCode::UnknownKey, e.line, "unknown key '" + key + "'");
    }
  }

  auto require = [&](const char* key) {
    if (!seen.count(key)) throw ConfigError(ErrorCode::BadValue, 0, std::string("missing key '") + key + "'");
  };
  require("symmetry");
  require("T");
  if (c.equation == Equation::SwiftHohenberg) {
    require("lambda");
    if (c.ic == "steady-plus-critical") throw bad(entries.at("ic"), "steady-plus-critical needs the Brusselator");
  } else {
    for (const char* key : {"A", "B", "d1", "d2"}) require(key);
  }
  if (c.snapshot_every % c.diag_every != 0) {
    throw bad(entries.at("snapshot_every"), "snapshot_every must be a multiple of diag_every");
  }
  try {
    const Holohedry h = build_holohedry(c.symmetry);
    if (c.k0 && c.k0->size() != h.dimension()) throw bad(entries.at("k0"), "k0 dimension does not match symmetry");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    throw bad(entries.at("symmetry"), err.what());
  }
  return c;
}

RunConfig load_config(const fs::path& path) { return parse_config(read_file(path)); }

std::string config_text(const RunConfig& c) {
  std::ostringstream out;
  out << "symmetry = " << c.symmetry << '\n';
  if (c.k0) {
    out << "k0 =";
    for (double x : *c.k0) out << ' ' << format_double(x);
    out << '\n';
  }
  out << "N = " << c.N << '\n';
  out << "K_max = " << format_double(c.K_max) << '\n';
  out << "relation_bound = " << c.relation_bound << '\n';
  out << "k_scale = " << format_double(c.k_scale) << '\n';
  out << "equation = " << equation_name(c.equation) << '\n';
  if (c.equation == Equation::SwiftHohenberg) {
    out << "lambda = " << format_double(c.lambda) << '\n';
  } else {
    out << "A = " << format_double(c.A) << '\n';
    out << "B = " << format_double(c.B) << '\n';
    out << "d1 = " << format_double(c.d1) << '\n';
    out << "d2 = " << format_double(c.d2) << '\n';
  }
  out << "dt = " << format_double(c.dt) << '\n';
  out << "T = " << format_double(c.T) << '\n';
  out << "scheme = " << to_string(c.scheme) << '\n';
  out << "phi_threshold = " << format_double(c.phi_threshold) << '\n';
  out << "dealias = " << c.dealias << '\n';
  out << "ic = " << c.ic << '\n';
  out << "ic_amplitude = " << format_double(c.ic_amplitude) << '\n';
  out << "perturbation = " << format_double(c.perturbation) << '\n';
  if (c.ic_l2) out << "ic_l2 = " << format_double(*c.ic_l2) << '\n';
  out << "seed = " << c.seed << '\n';
  out << "diag_every = " << c.diag_every << '\n';
  out << "snapshot_every = " << c.snapshot_every << '\n';
  out << "s = " << format_double(c.s) << '\n';
  out << "output = " << c.output << '\n';
  return out.str();
}

ModeSetPtr build_modes(const RunConfig& config) {
  auto h = std::make_shared<const Holohedry>(build_holohedry(config.symmetry));
  Eigen::VectorXd k0 = Eigen::VectorXd::Unit(h->dimension(), 0);
  if (config.k0) k0 = *config.k0;
  auto module = generate_frequency_module(*h, k0, config.relation_bound);
  if (config.k_scale != 1.0) module = module.scaled(config.k_scale);
  return ActiveModeSet::create(std::make_shared<const FrequencyModule>(std::move(module)), config.N,
                               config.K_max);
}

// ---- snapshots ----

namespace {

constexpr std::string_view kMagic = "qc-snapshot";
constexpr std::string_view kEndManifest = "end_manifest\n";

void put_le(std::string& out, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>(bits & 0xffu));
    bits >>= 8;
  }
}

double get_le(const char* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | static_cast<unsigned char>(p[i]);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_snapshot(const Snapshot& snap, const fs::path& path) {
  if (snap.components.empty()) throw Error(ErrorCode::BadValue, "snapshot has no components");
  const auto& modes = snap.components.front().modes();
  const Eigen::MatrixXd& gens = modes.module().generators();
  std::string out;
  out += std::string(kMagic) + "\n";
  out += "format_version = " + std::to_string(kSnapshotFormatVersion) + "\n";
  out += config_text(snap.config);
  out += "t = " + format_double(snap.t) + "\n";
  out += "components = " + std::to_string(snap.components.size()) + "\n";
  out += "active_modes = " + std::to_string(modes.size()) + "\n";
  out += "generators =";
  for (Eigen::Index i = 0; i < gens.rows(); ++i) {
    if (i > 0) out += " ;";
    for (Eigen::Index j = 0; j < gens.cols(); ++j) out += " " + format_double(gens(i, j));
  }
  out += "\n";
  out += kEndManifest;
  for (const auto& field : snap.components) {
    if (field.modes_ptr() != snap.components.front().modes_ptr()) {
      throw Error(ErrorCode::BadValue, "snapshot components live on different active sets");
    }
    for (const Complex& z : field.coefficients()) {
      put_le(out, z.real());
      put_le(out, z.imag());
    }
  }
  write_file(path, out);
}

Snapshot read_snapshot(const fs::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.rfind(std::string(kMagic) + "\n", 0) != 0) {
    throw Error(ErrorCode::CorruptPayload, path.string() + " is not a snapshot file");
  }
  const auto marker = bytes.find("\n" + std::string(kEndManifest));
  if (marker == std::string::npos) throw Error(ErrorCode::CorruptPayload, "manifest terminator missing");
  const std::string_view manifest = std::string_view(bytes).substr(kMagic.size() + 1, marker - kMagic.size());
  const std::size_t payload_at = marker + 1 + kEndManifest.size();

  std::string config_part;
  std::map<std::string, std::string, std::less<>> meta;
  for (auto line : split(manifest, '\n')) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string key(trim(line.substr(0, eq)));
    if (key == "format_version" || key == "t" || key == "components" || key == "active_modes" ||
        key == "generators") {
      meta[key] = std::string(trim(line.substr(eq + 1)));
    } else {
      config_part.append(line).push_back('\n');
    }
  }
  for (const char* key : {"format_version", "t", "components", "active_modes", "generators"}) {
    if (!meta.count(key)) throw Error(ErrorCode::CorruptPayload, std::string("manifest lacks ") + key);
  }
  int version = 0;
  if (!parse_number(meta["format_version"], version) || version != kSnapshotFormatVersion) {
    throw Error(ErrorCode::FormatVersionMismatch,
                "snapshot format " + meta["format_version"] + ", expected " + std::to_string(kSnapshotFormatVersion));
  }

  Snapshot snap;
  snap.config = parse_config(config_part);
  std::size_t components = 0, active = 0;
  if (!parse_number(meta["t"], snap.t) || !parse_number(meta["components"], components) ||
      !parse_number(meta["active_modes"], active) || components < 1 || components > 2) {
    throw Error(ErrorCode::CorruptPayload, "malformed manifest entry");
  }

  const ModeSetPtr modes = build_modes(snap.config);
  const Eigen::MatrixXd& gens = modes->module().generators();
  const auto rows = split(meta["generators"], ';');
  bool same = static_cast<Eigen::Index>(rows.size()) == gens.rows();
  for (Eigen::Index i = 0; same && i < gens.rows(); ++i) {
    const auto values = parse_doubles(rows[static_cast<std::size_t>(i)]);
    same = static_cast<Eigen::Index>(values.size()) == gens.cols();
    for (Eigen::Index j = 0; same && j < gens.cols(); ++j) {
      same = std::abs(values[static_cast<std::size_t>(j)] - gens(i, j)) <= 1e-14 * std::max(1.0, std::abs(gens(i, j)));
    }
  }
  if (!same) throw Error(ErrorCode::ManifestMismatch, "rebuilt module generators differ from the manifest");
  if (active != modes->size()) {
    throw Error(ErrorCode::ManifestMismatch, "manifest lists " + std::to_string(active) + " active modes, rebuilt set has " +
                                                 std::to_string(modes->size()));
  }

  const std::size_t expected = 16 * active * components;
  if (bytes.size() - payload_at != expected) {
    throw Error(ErrorCode::CorruptPayload, "payload has " + std::to_string(bytes.size() - payload_at) +
                                               " bytes, expected " + std::to_string(expected));
  }
  const char* p = bytes.data() + payload_at;
  for (std::size_t c = 0; c < components; ++c) {
    Eigen::VectorXcd a(static_cast<Eigen::Index>(active));
    for (Eigen::Index i = 0; i < a.size(); ++i, p += 16) a[i] = Complex(get_le(p), get_le(p + 8));
    snap.components.emplace_back(modes, std::move(a));
  }
  return snap;
}

// ---- diagnostics CSV ----

namespace {
constexpr std::string_view kCsvHeader = "t,l2,l1,hs,energy,rhs_l2,grad_hull_sq,sym_drift,min_u,max_u";
}

std::string diagnostics_csv(const Trajectory& trajectory) {
  const bool has_v = !trajectory.empty() && trajectory.front().has_v;
  std::string out(kCsvHeader);
  if (has_v) out += ",min_v,max_v";
  out += '\n';
  for (const auto& r : trajectory) {
    std::vector<double> row{r.t, r.l2, r.l1, r.hs, r.energy, r.rhs_l2, r.grad_hull_sq, r.sym_drift, r.min_u, r.max_u};
    if (has_v) {
      row.push_back(r.min_v);
      row.push_back(r.max_v);
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_diagnostics_csv(const Trajectory& trajectory, const fs::path& path) {
  write_file(path, diagnostics_csv(trajectory));
}

Trajectory parse_diagnostics_csv(std::string_view text) {
  auto lines = split(text, '\n');
  if (lines.empty() || lines.front().rfind(kCsvHeader, 0) != 0) {
    throw Error(ErrorCode::BadValue, "diagnostics header mismatch");
  }
  const bool has_v = lines.front() != kCsvHeader;
  if (has_v && lines.front() != std::string(kCsvHeader) + ",min_v,max_v") {
    throw Error(ErrorCode::BadValue, "diagnostics header mismatch");
  }
  Trajectory out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    if (cells.size() != (has_v ? 12u : 10u)) throw Error(ErrorCode::BadValue, "bad diagnostics row");
    std::vector<double> v(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!parse_number(cells[j], v[j])) throw Error(ErrorCode::BadValue, "bad diagnostics value");
    }
    DiagnosticsRecord r;
    r.t = v[0], r.l2 = v[1], r.l1 = v[2], r.hs = v[3], r.energy = v[4], r.rhs_l2 = v[5];
    r.grad_hull_sq = v[6], r.sym_drift = v[7], r.min_u = v[8], r.max_u = v[9];
    if (has_v) {
      r.has_v = true;
      r.min_v = v[10];
      r.max_v = v[11];
    }
    out.push_back(r);
  }
  return out;
}

// ---- raster ----

std::string pgm_bytes(const Raster& raster) {
  std::string out = "P5\n" + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(raster.pixels.data()), raster.pixels.size());
  return out;
}

void export_raster(const HullField& field, double lo, double hi, int resolution, const fs::path& path) {
  write_file(path, pgm_bytes(render_image(field, lo, hi, resolution)));
}

// ---- initial conditions and runs ----

namespace {

HullField field_from_snapshot(const std::string& ic, const ModeSetPtr& modes, std::size_t component) {
  const Snapshot snap = read_snapshot(ic.substr(5));
  if (snap.components.size() <= component) {
    throw Error(ErrorCode::ManifestMismatch, "snapshot lacks component " + std::to_string(component));
  }
  const HullField& src = snap.components[component];
  HullField out(modes);
  for (std::size_t i = 0; i < src.modes().size(); ++i) {
    const auto pos = modes->position(src.modes().index(i));
    if (!pos) throw Error(ErrorCode::ManifestMismatch, "snapshot mode outside the configured active set");
    out.coefficients()[static_cast<Eigen::Index>(*pos)] = src.coefficients()[static_cast<Eigen::Index>(i)];
  }
  return out;
}

double default_l2(const RunConfig& c, double lambda) {
  if (c.ic_l2) return *c.ic_l2;
  return lambda > 0.0 ? c.ic_amplitude * std::sqrt(lambda) : c.ic_amplitude;
}

StepperConfig stepper_of(const RunConfig& c) { return {c.scheme, c.dt, c.phi_threshold}; }

}  // namespace

HullField initial_sh_field(const RunConfig& c, const ModeSetPtr& modes) {
  if (c.ic == "quasicrystal") {
    if (c.ic_l2) return orbit_field(modes, *c.ic_l2, c.perturbation * *c.ic_l2, c.seed);
    HullField f = quasicrystal_ic(modes, c.lambda, c.ic_amplitude, c.perturbation, c.seed);
    f.set_symmetric(true);
    return f;
  }
  if (c.ic == "random") return random_ic(modes, default_l2(c, c.lambda), c.seed);
  if (c.ic.rfind("file:", 0) == 0) return field_from_snapshot(c.ic, modes, 0);
  throw Error(ErrorCode::BadValue, "ic '" + c.ic + "' is not available for Swift-Hohenberg");
}

BrusselatorState initial_bruss_state(const RunConfig& c, const ModeSetPtr& modes) {
  const BrusselatorParams params{c.A, c.B, c.d1, c.d2};
  const StepperConfig stepper = stepper_of(c);
  if (c.ic == "steady-plus-critical") {
    const Eigen::Vector2d dir = turing_analysis(c.A, c.d1, c.d2).eigenvector;
    return steady_plus_orbit(modes, params, dir, c.ic_amplitude, stepper);
  }
  BrusselatorState s = steady_state_fields(modes, params, stepper);
  if (c.ic == "quasicrystal") {
    const double l2 = c.ic_l2.value_or(c.ic_amplitude);
    s.u += orbit_field(modes, l2, c.perturbation * l2, c.seed);
  } else if (c.ic == "random") {
    const double l2 = c.ic_l2.value_or(c.ic_amplitude);
    s.u += random_ic(modes, l2, c.seed);
    s.v += random_ic(modes, l2, c.seed + 1);
    s.u.set_symmetric(false);
    s.v.set_symmetric(false);
  } else {
    s.u = field_from_snapshot(c.ic, modes, 0);
    s.v = field_from_snapshot(c.ic, modes, 1);
  }
  return s;
}

RunSummary run_simulation(const RunConfig& c) {
  RunSummary summary;
  summary.directory = c.output;
  std::error_code ec;
  fs::create_directories(summary.directory, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + summary.directory.string() + ": " + ec.message());
  write_file(summary.directory / "config.txt", config_text(c));

  const ModeSetPtr modes = build_modes(c);
  auto snapshot_due = [&](double t, double t0, long& step) {
    step = std::lround((t - t0) / c.dt);
    return c.snapshot_every > 0 && step > 0 && step % c.snapshot_every == 0 &&
           std::abs(t - t0 - static_cast<double>(step) * c.dt) <= 1e-9 * c.dt;
  };
  auto snapshot_path = [&](long step) {
    char name[40];
    std::snprintf(name, sizeof name, "snapshot_%08ld.bin", step);
    return summary.directory / name;
  };

  if (c.equation == Equation::SwiftHohenberg) {
    SolverState state{initial_sh_field(c, modes), 0.0, {c.lambda}, stepper_of(c)};
    IntegrateOptions opts;
    opts.diag_every = c.diag_every;
    opts.sobolev_index = c.s;
    opts.padding = c.dealias;
    opts.observer = [&](const SolverState& s) {
      long step = 0;
      if (snapshot_due(s.t, 0.0, step)) {
        summary.snapshots.push_back(snapshot_path(step));
        write_snapshot({c, s.t, {s.field}}, summary.snapshots.back());
      }
    };
    auto result = integrate(std::move(state), c.T, opts);
    summary.trajectory = std::move(result.trajectory);
    summary.snapshots.push_back(summary.directory / "final.bin");
    write_snapshot({c, result.final_state.t, {result.final_state.field}}, summary.snapshots.back());
  } else {
    BrusselatorState state = initial_bruss_state(c, modes);
    BrusselatorOptions opts;
    opts.diag_every = c.diag_every;
    opts.sobolev_index = c.s;
    opts.padding = c.dealias;
    opts.observer = [&](const BrusselatorState& s) {
      long step = 0;
      if (snapshot_due(s.t, 0.0, step)) {
        summary.snapshots.push_back(snapshot_path(step));
        write_snapshot({c, s.t, {s.u, s.v}}, summary.snapshots.back());
      }
    };
    auto result = bruss_integrate(std::move(state), c.T, opts);
    summary.trajectory = std::move(result.trajectory);
    summary.snapshots.push_back(summary.directory / "final.bin");
    write_snapshot({c, result.final_state.t, {result.final_state.u, result.final_state.v}},
                   summary.snapshots.back());
  }
  write_diagnostics_csv(summary.trajectory, summary.directory / "diagnostics.csv");
  return summary;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace qc
