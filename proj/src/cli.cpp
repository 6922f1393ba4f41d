#include "qcorr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/io.hpp"
#include "qcorr/kernels.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr::cli {

namespace {

using nlohmann::json;

// Flag values that do not parse are usage errors (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double(const std::string& s, const std::string& flag) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) throw UsageError(flag + ": cannot parse number \"" + s + "\"");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

WeakStrength parse_strength(const std::string& s) {
  const double v = parse_double(s, "--x");
  if (std::isinf(v) && v > 0) return WeakStrength::projective();
  return WeakStrength::finite(v);
}

Vec3 parse_vec3(const std::string& s, const std::string& flag) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError(flag + " expects three comma-separated numbers");
  return {parse_double(parts[0], flag), parse_double(parts[1], flag), parse_double(parts[2], flag)};
}

// "a,b,c" or "start:stop:step".
std::vector<double> parse_list(const std::string& s, const std::string& flag) {
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw UsageError(flag + " range must be start:stop:step");
    const double step = parse_double(parts[2], flag);
    if (!(step > 0.0)) throw UsageError(flag + " step must be positive");
    return arithmetic_grid(parse_double(parts[0], flag), parse_double(parts[1], flag), step);
  }
  std::vector<double> out;
  for (const auto& p : split(s, ','))
    if (!p.empty()) out.push_back(parse_double(p, flag));
  return out;
}

MeasureKind parse_kind(const std::string& s) {
  const auto k = parse_measure_kind(s);
  if (!k) throw UsageError("unknown measure \"" + s + "\" (discord, super-discord, deficit, weak-deficit)");
  return *k;
}

StateDescriptor load_state(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw UsageError("cannot read state file " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_state(ss.str());
  }
  return parse_state(arg);
}

struct Common {
  std::string format = "text";
  std::string out_path;
  unsigned threads = 0;
  std::string kernel = "auto";
};

struct StateFlags {
  std::string state;
  std::string werner_z;
  std::string bell_c;

  StateDescriptor resolve() const {
    const int given = !state.empty() + !werner_z.empty() + !bell_c.empty();
    if (given != 1) throw UsageError("give exactly one of --state, --werner, --bell");
    if (!state.empty()) return load_state(state);
    if (!werner_z.empty()) return {WernerParams{parse_double(werner_z, "--werner")}};
    return {BellDiagonalParams{parse_vec3(bell_c, "--bell")}};
  }
};

void add_state_flags(CLI::App* cmd, StateFlags& f) {
  cmd->add_option("--state", f.state, "JSON state descriptor, or @file");
  cmd->add_option("--werner", f.werner_z, "Werner state with parameter z");
  cmd->add_option("--bell", f.bell_c, "Bell-diagonal state c1,c2,c3");
}

struct MeasureFlags {
  std::string measure;
  std::string x;
  std::string method;
  int n_theta = 64;
  int n_phi = 64;
  double tol = 1e-10;

  WeakStrength strength(MeasureKind kind) const {
    if (x.empty()) {
      if (is_weak(kind)) throw UsageError(std::string(to_string(kind)) + " needs --x <value|inf>");
      return WeakStrength::projective();
    }
    return parse_strength(x);
  }

  OptimizerOptions options() const {
    OptimizerOptions o;
    o.n_theta = n_theta;
    o.n_phi = n_phi;
    o.refine_tolerance = tol;
    return o;
  }
};

void add_measure_flags(CLI::App* cmd, MeasureFlags& f) {
  cmd->add_option("--measure", f.measure, "discord | super-discord | deficit | weak-deficit")->required();
  cmd->add_option("--x", f.x, "weak measurement strength, or inf");
  cmd->add_option("--method", f.method, "closed | numeric | both")
      ->check(CLI::IsMember({"closed", "numeric", "both"}));
  cmd->add_option("--grid-theta", f.n_theta, "numeric optimizer polar grid size");
  cmd->add_option("--grid-phi", f.n_phi, "numeric optimizer azimuthal grid size");
  cmd->add_option("--tol", f.tol, "numeric optimizer tolerance");
}

void add_common(CLI::App* cmd, Common& c, std::vector<std::string> formats) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
  cmd->add_option("--out", c.out_path, "write results to this file");
}

// Writes text to --out or the output stream.
void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw DomainError("cannot open output file " + c.out_path);
  f << text;
}

std::string render_results(const Common& c, const std::optional<MeasureResult>& closed,
                           const std::optional<MeasureResult>& numeric) {
  std::ostringstream os;
  if (c.format == "json") {
    json j = json::object();
    if (closed) j["closed_form"] = to_json(*closed);
    if (numeric) j["numeric"] = to_json(*numeric);
    if (closed && numeric) j["difference"] = closed->value - numeric->value;
    if (closed && !numeric) j = to_json(*closed);
    if (numeric && !closed) j = to_json(*numeric);
    os << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    os << "measure,method,x,value\n";
    for (const auto* r : {closed ? &*closed : nullptr, numeric ? &*numeric : nullptr}) {
      if (!r) continue;
      os << to_string(r->kind) << ',' << to_string(r->method) << ','
         << (r->x ? format_number(*r->x) : std::string("inf")) << ',' << format_number(r->value) << '\n';
    }
    if (closed && numeric) os << to_string(closed->kind) << ",difference,,"
                              << format_number(closed->value - numeric->value) << '\n';
  } else {
    if (closed && numeric) {
      os << "closed_form " << format_number(closed->value) << '\n'
         << "numeric     " << format_number(numeric->value) << '\n'
         << "difference  " << format_number(closed->value - numeric->value) << '\n';
    } else {
      const MeasureResult& r = closed ? *closed : *numeric;
      os << format_number(r.value) << '\n';
    }
  }
  return os.str();
}

void note_flags(std::ostream& err, const MeasureResult& r) {
  if (r.projective_substituted)
    err << "note: " << to_string(r.kind) << " at x = inf evaluated as its projective counterpart\n";
  if (r.clamped) err << "note: tiny negative value clamped to 0\n";
  if (r.trace && !r.trace->converged) err << "warning: numeric optimizer did not converge\n";
}

std::string default_method(const StateDescriptor& s, const std::string& requested) {
  if (!requested.empty()) return requested;
  return s.bell_params() ? "closed" : "numeric";
}

int do_compute(const Common& c, const StateFlags& sf, const MeasureFlags& mf, const std::string& basis_arg,
               std::ostream& out, std::ostream& err) {
  const MeasureKind kind = parse_kind(mf.measure);
  const StateDescriptor desc = sf.resolve();
  const WeakStrength x = mf.strength(kind);
  const TwoQubitState rho = desc.state();

  if (!basis_arg.empty()) {
    if (!mf.method.empty()) throw UsageError("--basis cannot be combined with --method");
    const auto basis = MeasurementBasis::normalized(parse_vec3(basis_arg, "--basis"));
    const MeasureResult r = measure_at_basis(kind, rho, x, basis);
    note_flags(err, r);
    emit(c, out, render_results(c, r, std::nullopt));
    return kExitOk;
  }

  const std::string method = default_method(desc, mf.method);
  std::optional<MeasureResult> closed, numeric;
  if (method != "numeric") {
    if (const auto* w = std::get_if<WernerParams>(&desc.spec))
      closed = werner_measure(kind, *w, x);
    else if (const auto* b = std::get_if<BellDiagonalParams>(&desc.spec))
      closed = bell_measure(kind, *b, x);
    else
      throw DomainError("closed forms need a werner or bell_diagonal state; use --method numeric");
    note_flags(err, *closed);
  }
  if (method != "closed") {
    numeric = measure_numeric(kind, rho, x, mf.options());
    note_flags(err, *numeric);
  }
  emit(c, out, render_results(c, closed, numeric));
  return kExitOk;
}

struct ChannelFlags {
  std::string p, gamma, t;

  PhaseFlipParams resolve() const {
    if (!p.empty() && (!gamma.empty() || !t.empty())) throw UsageError("--p conflicts with --gamma/--t");
    if (!p.empty()) return PhaseFlipParams::from_probability(parse_double(p, "--p"));
    if (gamma.empty() || t.empty()) throw UsageError("give --p, or both --gamma and --t");
    return PhaseFlipParams::from_rate(parse_double(gamma, "--gamma"), parse_double(t, "--t"));
  }
};

int do_channel(const Common& c, const StateFlags& sf, const MeasureFlags& mf, const ChannelFlags& cf,
               std::ostream& out, std::ostream& err) {
  const MeasureKind kind = parse_kind(mf.measure);
  const StateDescriptor desc = sf.resolve();
  const WeakStrength x = mf.strength(kind);
  const PhaseFlipParams p = cf.resolve();
  const TwoQubitState rho = desc.state();

  const std::string method = default_method(desc, mf.method);
  std::optional<MeasureResult> closed, numeric;
  if (method != "numeric") {
    if (const auto* w = std::get_if<WernerParams>(&desc.spec)) {
      closed = channel_measure_werner(kind, *w, x, p);
    } else if (const auto* b = std::get_if<BellDiagonalParams>(&desc.spec)) {
      closed = is_deficit(kind) ? bell_measure(kind, evolve_bell(*b, p), x) : channel_measure_bell(kind, *b, x, p);
    } else {
      throw DomainError("closed forms need a werner or bell_diagonal state; use --method numeric");
    }
    note_flags(err, *closed);
  }
  if (method != "closed") {
    numeric = measure_numeric(kind, apply_channel(rho, phase_flip_channel(p)), x, mf.options());
    note_flags(err, *numeric);
  }
  emit(c, out, render_results(c, closed, numeric));
  return kExitOk;
}

struct SweepFlags {
  std::string family = "werner";
  std::string measures = "discord,super-discord,deficit,weak-deficit";
  std::string z = "0:1:0.01";
  std::string c;
  std::string x = "0.2";
  std::string p = "0";
};

int do_sweep(const Common& c, const SweepFlags& f, std::ostream& out) {
  SweepSpec spec;
  spec.family = f.family == "werner" ? Family::Werner : Family::BellDiagonal;
  for (const auto& m : split(f.measures, ','))
    if (!m.empty()) spec.kinds.push_back(parse_kind(m));
  if (spec.kinds.empty()) throw UsageError("--measures is empty");
  if (spec.family == Family::Werner) {
    if (!f.c.empty()) throw UsageError("--c applies to the bell_diagonal family only");
    spec.z_values = parse_list(f.z, "--z");
  } else {
    if (f.c.empty()) throw UsageError("bell_diagonal sweeps need --c c1,c2,c3");
    spec.c = BellDiagonalParams{parse_vec3(f.c, "--c")};
  }
  for (double v : parse_list(f.x, "--x"))
    spec.x_values.push_back(std::isinf(v) && v > 0 ? WeakStrength::projective() : WeakStrength::finite(v));
  spec.p_values = parse_list(f.p, "--p");

  const Table t = sweep(spec);
  std::ostringstream os;
  if (c.format == "json")
    os << to_json(t).dump(2) << '\n';
  else
    write_csv(os, t);
  emit(c, out, os.str());
  return kExitOk;
}

struct SurfaceFlags {
  std::string measure = "discord";
  double target = 0.15;
  std::string x;
  int resolution = 64;
  double oracle_fraction = 0.01;
  bool edges = false;
};

int do_surface(const Common& c, const SurfaceFlags& f, std::ostream& out, std::ostream& err) {
  SurfaceRequest req;
  req.kind = parse_kind(f.measure);
  if (f.x.empty()) {
    if (is_weak(req.kind)) throw UsageError(f.measure + " needs --x <value|inf>");
  } else {
    req.x = parse_strength(f.x);
  }
  req.target = f.target;
  req.resolution = f.resolution;
  req.oracle_fraction = f.oracle_fraction;
  const SurfacePointCloud cloud = level_surface(req);

  const auto& d = cloud.diagnostics;
  err << "points " << cloud.points.size() << ", sign changes " << d.sign_changes << ", unconverged "
      << d.unconverged << ", oracle checks " << d.oracle_checks << " (max deviation "
      << format_number(d.max_oracle_deviation) << ")\n";

  std::ostringstream os;
  if (c.format == "json")
    os << to_json(cloud, f.edges).dump(2) << '\n';
  else
    write_surface_csv(os, cloud, f.edges);
  emit(c, out, os.str());
  return kExitOk;
}

struct SelfcheckFlags {
  int samples = 100;
  std::string x = "1.0";
  std::uint64_t seed = 20240101;
  double tolerance = 1e-6;
};

int do_selfcheck(const Common& c, const SelfcheckFlags& f, std::ostream& out) {
  if (f.samples < 0) throw UsageError("--samples must be non-negative");
  const WeakStrength x = parse_strength(f.x);
  std::mt19937_64 rng(f.seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);

  std::vector<BellDiagonalParams> states;
  while (static_cast<int>(states.size()) < f.samples) {
    BellDiagonalParams p{{coord(rng), coord(rng), coord(rng)}};
    if (p.physical()) states.push_back(p);
  }

  double overall = 0.0;
  json per_kind = json::object();
  std::ostringstream text;
  for (MeasureKind kind : kAllKinds) {
    double worst = 0.0;
    for (const auto& p : states) {
      const double closed = bell_measure(kind, p, x).value;
      const double numeric = measure_numeric(kind, bell_diagonal(p), x).value;
      worst = std::max(worst, std::abs(closed - numeric));
    }
    overall = std::max(overall, worst);
    per_kind[std::string(to_string(kind))] = worst;
    text << to_string(kind) << " max|closed-numeric| " << format_number(worst) << '\n';
  }
  const bool pass = overall <= f.tolerance;
  std::ostringstream os;
  if (c.format == "json") {
    os << json{{"samples", f.samples}, {"seed", f.seed},         {"max_deviation", per_kind},
               {"overall", overall},   {"tolerance", f.tolerance}, {"pass", pass}}
              .dump(2)
       << '\n';
  } else {
    os << text.str() << "overall " << format_number(overall) << (pass ? " PASS" : " FAIL") << '\n';
  }
  emit(c, out, os.str());
  return pass ? kExitOk : kExitComputation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum and super-quantum correlations of two-qubit states", "qcorr"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "cap on worker threads (0 = all cores)");
  app.add_option("--kernel", common.kernel, "batch kernel: auto | scalar | avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  StateFlags state_flags;
  MeasureFlags measure_flags;
  std::string basis_arg;
  auto* compute = app.add_subcommand("compute", "evaluate one correlation measure");
  add_state_flags(compute, state_flags);
  add_measure_flags(compute, measure_flags);
  compute->add_option("--basis", basis_arg, "evaluate at this measurement direction nx,ny,nz");
  add_common(compute, common, {"text", "csv", "json"});

  ChannelFlags channel_flags;
  auto* channel = app.add_subcommand("channel", "measure after local phase-flip noise on both qubits");
  add_state_flags(channel, state_flags);
  add_measure_flags(channel, measure_flags);
  channel->add_option("--p", channel_flags.p, "flip probability");
  channel->add_option("--gamma", channel_flags.gamma, "phase damping rate");
  channel->add_option("--t", channel_flags.t, "time");
  add_common(channel, common, {"text", "csv", "json"});

  SweepFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate measures over a parameter grid");
  sweep_cmd->add_option("--family", sweep_flags.family, "werner | bell_diagonal")
      ->check(CLI::IsMember({"werner", "bell_diagonal"}));
  sweep_cmd->add_option("--measures", sweep_flags.measures, "comma-separated measures");
  sweep_cmd->add_option("--z", sweep_flags.z, "Werner z values: list or start:stop:step");
  sweep_cmd->add_option("--c", sweep_flags.c, "Bell-diagonal c1,c2,c3");
  sweep_cmd->add_option("--x", sweep_flags.x, "strengths: list or start:stop:step, inf allowed in lists");
  sweep_cmd->add_option("--p", sweep_flags.p, "flip probabilities: list or start:stop:step");
  add_common(sweep_cmd, common, {"csv", "json"});

  SurfaceFlags surface_flags;
  auto* surface = app.add_subcommand("surface", "points on a level surface in the Bell-diagonal tetrahedron");
  surface->add_option("--measure", surface_flags.measure, "measure");
  surface->add_option("--target", surface_flags.target, "level in bits");
  surface->add_option("--x", surface_flags.x, "weak measurement strength, or inf");
  surface->add_option("--resolution", surface_flags.resolution, "grid cells per axis");
  surface->add_option("--oracle-fraction", surface_flags.oracle_fraction, "fraction of points re-checked numerically");
  surface->add_flag("--edges", surface_flags.edges, "include the grid edge of each point");
  add_common(surface, common, {"csv", "json"});

  SelfcheckFlags self_flags;
  auto* selfcheck = app.add_subcommand("selfcheck", "compare closed forms with the numeric oracle");
  selfcheck->add_option("--samples", self_flags.samples, "random Bell-diagonal states");
  selfcheck->add_option("--x", self_flags.x, "weak measurement strength");
  selfcheck->add_option("--seed", self_flags.seed, "sampler seed");
  selfcheck->add_option("--tolerance", self_flags.tolerance, "pass threshold");
  add_common(selfcheck, common, {"text", "json"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  // Sweep and surface outputs have no text form.
  if ((sweep_cmd->parsed() || surface->parsed()) && common.format == "text") common.format = "csv";

  try {
    set_max_threads(common.threads);
    if (common.kernel != "auto") set_isa(*parse_isa(common.kernel));
    if (compute->parsed()) return do_compute(common, state_flags, measure_flags, basis_arg, out, err);
    if (channel->parsed()) return do_channel(common, state_flags, measure_flags, channel_flags, out, err);
    if (sweep_cmd->parsed()) return do_sweep(common, sweep_flags, out);
    if (surface->parsed()) return do_surface(common, surface_flags, out, err);
    return do_selfcheck(common, self_flags, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitComputation;
  }
}

}  // namespace qcorr::cli
