#include "peakon/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "io.hpp"
#include "peakon/asymptotics.hpp"
#include "peakon/dynamics.hpp"
#include "peakon/flow.hpp"

namespace peakon::cli {

namespace {

constexpr const char* kModule = "cli";

struct Options {
  std::string input;
  std::string output;
  std::string profile_output;
  std::string shifts_output;
  std::string config;
  std::string times;
  std::string grid;
  std::string arithmetic;
  std::string kernel;
  std::string t_final;
  std::string tol;
  std::string samples;
  std::optional<double> ka, kb_plus, kb_minus, knu, kb, kc;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--input,-i", o.input, "input JSON file")->required();
  cmd->add_option("--output,-o", o.output, "output file (default: standard output)");
  cmd->add_option("--t-final", o.t_final, "final time");
  cmd->add_option("--times", o.times, "comma-separated sample times");
  cmd->add_option("--grid", o.grid, "profile grid min:max:step");
  cmd->add_option("--tol", o.tol, "ODE relative tolerance or collision tolerance");
  cmd->add_option("--arithmetic", o.arithmetic, "float or rational");
  cmd->add_option("--kernel", o.kernel, "peakon, hyperbolic, trigonometric or polynomial");
  cmd->add_option("--kernel-a", o.ka, "kernel constant a");
  cmd->add_option("--kernel-b-plus", o.kb_plus, "hyperbolic/trigonometric b_plus");
  cmd->add_option("--kernel-b-minus", o.kb_minus, "hyperbolic/trigonometric b_minus");
  cmd->add_option("--kernel-nu", o.knu, "hyperbolic/trigonometric nu");
  cmd->add_option("--kernel-b", o.kb, "polynomial |x| coefficient");
  cmd->add_option("--kernel-c", o.kc, "polynomial x^2 coefficient");
  cmd->add_option("--profile-output", o.profile_output, "profile CSV file (evolve)");
  cmd->add_option("--shifts-output", o.shifts_output, "phase-shift JSON file (asymptotics)");
  cmd->add_option("--samples", o.samples, "collision scan samples (invert of an evolved state)");
  cmd->add_option("--config", o.config, "key = value defaults file (also $PEAKON_CONFIG)");
}

// Flags win over the defaults file; the defaults file wins over built-ins.
void apply_defaults(Options& o) {
  std::string path = o.config;
  if (path.empty())
    if (const char* env = std::getenv("PEAKON_CONFIG")) path = env;
  if (path.empty()) return;
  const auto kv = read_key_values(path);
  const std::map<std::string, std::string*> slots{
      {"t-final", &o.t_final}, {"times", &o.times},           {"grid", &o.grid},
      {"tol", &o.tol},         {"arithmetic", &o.arithmetic}, {"kernel", &o.kernel},
      {"samples", &o.samples}};
  for (const auto& [key, value] : kv) {
    auto it = slots.find(key);
    if (it == slots.end()) throw InvalidInput(kModule, "unknown config key '" + key + "'");
    if (it->second->empty()) *it->second = value;
  }
}

double real_option(const std::string& text, const std::string& name) {
  try {
    return parse_list(text).at(0);
  } catch (const InvalidInput&) {
    throw InvalidInput(kModule, "invalid value for --" + name);
  }
}

double tolerance(const Options& o, double fallback) {
  if (o.tol.empty()) return fallback;
  const double t = real_option(o.tol, "tol");
  if (!(t > 0.0)) throw InvalidInput(kModule, "--tol must be positive");
  return t;
}

Arithmetic arithmetic(const Options& o) {
  if (o.arithmetic.empty() || o.arithmetic == "float") return Arithmetic::floating;
  if (o.arithmetic == "rational") return Arithmetic::rational;
  throw InvalidInput(kModule, "--arithmetic must be float or rational");
}

std::vector<double> sample_times(const Options& o) {
  std::vector<double> ts;
  if (!o.times.empty()) ts = parse_list(o.times);
  else if (!o.t_final.empty()) ts = {real_option(o.t_final, "t-final")};
  else throw InvalidInput(kModule, "--times or --t-final is required");
  for (double t : ts)
    if (!(t >= 0.0)) throw InvalidInput(kModule, "times must be nonnegative");
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

KernelParams kernel(const Options& o, const std::optional<KernelParams>& from_input) {
  if (o.kernel.empty()) return from_input.value_or(KernelParams::peakon());
  if (o.kernel == "peakon") return KernelParams::peakon();
  switch (kernel_branch_from_string(o.kernel)) {
    case KernelBranch::hyperbolic:
      return KernelParams::hyperbolic(o.ka.value_or(0.0), o.kb_plus.value_or(1.0),
                                      o.kb_minus.value_or(-1.0), o.knu.value_or(1.0));
    case KernelBranch::trigonometric:
      return KernelParams::trigonometric(o.ka.value_or(0.0), o.kb_plus.value_or(1.0),
                                         o.kb_minus.value_or(0.0), o.knu.value_or(1.0));
    case KernelBranch::polynomial:
      return KernelParams::polynomial(o.ka.value_or(0.0), o.kb.value_or(0.0), o.kc.value_or(0.0));
  }
  return KernelParams::peakon();
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

// companion output next to --output, or standard output when neither is set
std::string sibling(const Options& o, const std::string& flag_value, const std::string& suffix) {
  if (!flag_value.empty()) return flag_value;
  if (!o.output.empty()) return o.output + suffix;
  return {};
}

Grid auto_grid(const std::vector<PeakonConfig>& states) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const auto& s : states)
    for (const auto& pk : s) {
      lo = any ? std::min(lo, pk.q) : pk.q;
      hi = any ? std::max(hi, pk.q) : pk.q;
      any = true;
    }
  return Grid{std::floor(lo) - 10.0, std::ceil(hi) + 10.0, 1e-2};
}

std::vector<std::string> indexed(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::string header(const std::vector<std::string>& cols) {
  std::string h;
  for (std::size_t i = 0; i < cols.size(); ++i) h += (i ? "," : "") + cols[i];
  return h + "\n";
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const PeakonInput in = parse_peakon_input(read_json_file(o.input));
  const KernelParams k = kernel(o, in.kernel);
  IntegrateOptions opt;
  opt.rtol = tolerance(o, 1e-10);
  opt.atol = opt.rtol * 1e-2;
  double t_final = 0.0;
  if (!o.times.empty()) {
    opt.output_times = sample_times(o);
    t_final = opt.output_times.back();
  }
  if (!o.t_final.empty()) t_final = std::max(t_final, real_option(o.t_final, "t-final"));
  if (o.times.empty() && o.t_final.empty())
    throw InvalidInput(kModule, "--t-final or --times is required");

  const Trajectory traj = integrate(k, in.config, t_final, opt);
  const std::size_t n = in.config.size();
  auto cols = std::vector<std::string>{"t"};
  for (auto& c : indexed("q", n)) cols.push_back(c);
  for (auto& c : indexed("p", n)) cols.push_back(c);
  cols.push_back("H");
  std::string csv = header(cols);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<double> row{traj.times[i]};
    for (const auto& pk : traj.states[i]) row.push_back(pk.q);
    for (const auto& pk : traj.states[i]) row.push_back(pk.p);
    row.push_back(cf_hamiltonian(k, traj.states[i]));
    csv += csv_row(row);
  }
  emit(o.output, csv, out);
  err << "dynamics: hamiltonian drift " << fmt(traj.hamiltonian_drift) << "\n";
  if (!traj.events.empty()) {
    const CollisionEvent& ev = traj.events.front();
    err << "dynamics: collision of peaks " << ev.indices.first << " and " << ev.indices.second
        << " detected at t = " << fmt(ev.detection_time) << " (extrapolated t = " << fmt(ev.time)
        << "); requested times beyond it were not reached\n";
    return kExitCollision;
  }
  return kExitOk;
}

int cmd_spectral(const Options& o, std::ostream& out, std::ostream&) {
  const PeakonInput in = parse_peakon_input(read_json_file(o.input));
  const SpectralData d = spectral_data(in.config);
  const StringCoefficients c = string_coefficients(in.config);
  emit(o.output, spectral_to_json(d, c).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_invert(const Options& o, std::ostream& out, std::ostream& err) {
  const SpectralData d = parse_spectral_input(read_json_file(o.input));
  InversionOptions opt;
  opt.arithmetic = arithmetic(o);
  opt.collision_tolerance = tolerance(o, kCollisionTolerance);
  const Inversion r = invert_spectral(d.eigenvalues, d.gammas, opt);
  if (const auto* sig = std::get_if<CollisionSignal>(&r)) {
    emit(o.output, collision_to_json(*sig).dump(2) + "\n", out);
    err << "moment-inverse: Stieltjes denominator Delta1[" << sig->determinant_index
        << "] vanishes: peaks " << sig->peaks.first << " and " << sig->peaks.second
        << " collide\n";
    return kExitCollision;
  }
  emit(o.output, peakons_to_json(std::get<PeakonConfig>(r)).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_evolve(const Options& o, std::ostream& out, std::ostream& err) {
  const PeakonInput in = parse_peakon_input(read_json_file(o.input));
  if (arithmetic(o) == Arithmetic::rational)
    throw InvalidInput(kModule, "evolve supports floating arithmetic only");
  const auto ts = sample_times(o);
  json states = json::array();
  std::vector<PeakonConfig> peaks;
  for (double t : ts) {
    const ConservativeResult r = solve_conservative(in.config, t);
    if (const auto* sig = std::get_if<CollisionSignal>(&r)) {
      err << "isospectral-flow: collision of peaks " << sig->peaks.first << " and "
          << sig->peaks.second << " at t = " << fmt(t)
          << " has no reconstructed singular part\n";
      return kExitCollision;
    }
    const auto& s = std::get<ConservativeState>(r);
    states.push_back(state_to_json(t, s));
    peaks.push_back(s.peaks());
  }
  emit(o.output, json{{"states", states}}.dump(2) + "\n", out);

  const Grid g = o.grid.empty() ? auto_grid(peaks) : parse_grid(o.grid);
  const auto xs = g.points();
  std::vector<std::vector<double>> cols;
  std::vector<std::string> names{"x"};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    cols.push_back(eval_profile(peaks[i], xs));
    names.push_back("u(t=" + fmt(ts[i]) + ")");
  }
  std::string csv = header(names);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::vector<double> row{xs[j]};
    for (const auto& c : cols) row.push_back(c[j]);
    csv += csv_row(row);
  }
  emit(sibling(o, o.profile_output, ".profile.csv"), csv, out);
  return kExitOk;
}

int cmd_asymptotics(const Options& o, std::ostream& out, std::ostream&) {
  const PeakonInput in = parse_peakon_input(read_json_file(o.input));
  const auto ts = sample_times(o);
  std::string csv = "t,sup_error\n";
  ResolutionOptions ro;
  if (!o.grid.empty()) ro.step = parse_grid(o.grid).step;
  for (double t : ts) csv += csv_row({t, resolution_error(in.config, t, ro)});
  emit(o.output, csv, out);
  const SpectralData d = spectral_data(in.config);
  const PhaseShiftTable table = phase_shifts(d.eigenvalues, d.couplings);
  const json shifts{{"eigenvalues", table.eigenvalues}, {"shifts", table.shifts}};
  emit(sibling(o, o.shifts_output, ".shifts.json"), shifts.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const PeakonInput in = parse_peakon_input(read_json_file(o.input));
  const KernelParams k = kernel(o, in.kernel);
  if (!k.is_peakon()) throw InvalidInput(kModule, "compare needs the peakon kernel");
  const auto ts = sample_times(o);
  IntegrateOptions opt;
  opt.rtol = tolerance(o, 1e-10);
  opt.atol = opt.rtol * 1e-2;
  opt.output_times = ts;
  const Trajectory traj = integrate(k, in.config, ts.back(), opt);
  if (!traj.events.empty()) {
    err << "dynamics: collision at t = " << fmt(traj.events.front().time)
        << " precedes a requested time\n";
    return kExitCollision;
  }
  const std::size_t n = in.config.size();
  std::vector<std::string> cols{"t"};
  for (auto& c : indexed("ode_q", n)) cols.push_back(c);
  for (auto& c : indexed("ode_p", n)) cols.push_back(c);
  for (auto& c : indexed("spec_q", n)) cols.push_back(c);
  for (auto& c : indexed("spec_p", n)) cols.push_back(c);
  cols.push_back("sup_deviation");
  std::string csv = header(cols);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const ConservativeResult r = solve_conservative(in.config, traj.times[i]);
    if (std::holds_alternative<CollisionSignal>(r)) {
      err << "isospectral-flow: collision at t = " << fmt(traj.times[i]) << "\n";
      return kExitCollision;
    }
    const PeakonConfig& ode = traj.states[i];
    const PeakonConfig& spec = std::get<ConservativeState>(r).peaks();
    const Grid g = o.grid.empty() ? auto_grid({ode, spec}) : parse_grid(o.grid);
    const auto xs = g.points();
    const auto ua = eval_profile(ode, xs);
    const auto ub = eval_profile(spec, xs);
    double dev = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) dev = std::max(dev, std::fabs(ua[j] - ub[j]));
    worst = std::max(worst, dev);
    std::vector<double> row{traj.times[i]};
    for (const auto& pk : ode) row.push_back(pk.q);
    for (const auto& pk : ode) row.push_back(pk.p);
    for (const auto& pk : spec) row.push_back(pk.q);
    for (const auto& pk : spec) row.push_back(pk.p);
    row.push_back(dev);
    csv += csv_row(row);
  }
  csv += "max_deviation," + fmt(worst) + "\n";
  emit(o.output, csv, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Peakon solver: ODE integration, spectral transforms and asymptotics", "peakon"};
  app.require_subcommand(1);
  Options o;
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Options&, std::ostream&, std::ostream&);
  };
  const Command commands[] = {
      {"simulate", "integrate the peakon ODEs; trajectory CSV", &cmd_simulate},
      {"spectral", "forward spectral transform; JSON", &cmd_spectral},
      {"invert", "inverse spectral transform; peakon JSON or collision report", &cmd_invert},
      {"evolve", "conservative solution at sample times; state JSON and profile CSV", &cmd_evolve},
      {"asymptotics", "peakon-train resolution error CSV and phase shifts", &cmd_asymptotics},
      {"compare", "ODE versus spectral solution CSV with maximum deviation", &cmd_compare},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o);
    subs.emplace_back(sub, &c);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }

  try {
    apply_defaults(o);
    for (const auto& [sub, cmd] : subs)
      if (sub->parsed()) return cmd->fn(o, out, err);
  } catch (const CollisionAtTime& e) {
    err << "error: " << e.what() << "\n";
    return kExitCollision;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitBadInput;
}

}  // namespace peakon::cli
