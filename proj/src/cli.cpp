#include "stmas/cli.hpp"

#include "stmas/coherence.hpp"
#include "stmas/export.hpp"
#include "stmas/pulse_program.hpp"
#include "stmas/quadrupolar.hpp"
#include "stmas/spectrum.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace stmas {

namespace {

struct SimulateOptions {
  std::string file;
  std::string out = "spectrum.csv";
  std::string proj_f1;
  std::string proj_f2;
  int powder = 256;
  double lb_f2 = 50.0;
  double lb_f1 = 10.0;
  std::string shear;
  bool ascii = false;
  std::int64_t cycles = 1;
  std::optional<double> chi_deg;
};

std::optional<std::string> read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Loads and parses a program; prints issues and returns nullopt on failure.
std::optional<PulseProgram> load_program(const std::string &path, std::ostream &err) {
  auto text = read_file(path);
  if (!text) {
    err << "error: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  ParseResult parsed = parse_program(*text);
  if (!parsed.ok()) {
    for (const auto &issue : parsed.issues)
      err << path << ":" << format_issue(issue) << '\n';
    return std::nullopt;
  }
  return std::move(parsed.program);
}

std::string format_dp(const std::vector<int> &dp) {
  std::string s = "(";
  for (std::size_t i = 0; i < dp.size(); ++i) {
    if (i)
      s += ",";
    s += dp[i] > 0 ? "+" + std::to_string(dp[i]) : std::to_string(dp[i]);
  }
  return s + ")";
}

int cmd_pathways(const std::string &file, std::optional<int> pmax, std::ostream &out,
                 std::ostream &err) {
  auto prog = load_program(file, err);
  if (!prog)
    return kExitUsage;
  const int bound = pmax.value_or(prog->spin.twice);
  if (bound < 0 || std::abs(prog->cycle.acquisition_order) > bound) {
    err << "error: acquisition order " << prog->cycle.acquisition_order
        << " is unreachable with |p| <= " << bound << '\n';
    return kExitDomain;
  }
  const auto paths = enumerate_surviving_pathways(prog->cycle, prog->spin, bound);
  if (paths.empty()) {
    err << "error: no pathway reaches the acquisition order\n";
    return kExitDomain;
  }

  out << "acquisitions_per_cycle=" << acquisitions_per_cycle(prog->cycle) << '\n';
  out << "max_order=" << bound << '\n';
  out << "surviving=" << paths.size() << '\n';
  for (const auto &dp : paths) {
    std::string names, branches;
    for (const auto &r : prog->routes) {
      if (r.dp != dp)
        continue;
      names += (names.empty() ? "" : ",") + r.name;
      branches += (branches.empty() ? "" : ",") + to_string(r.t1_branch);
    }
    out << "dp=" << format_dp(dp) << " branch=" << (branches.empty() ? "-" : branches)
        << " route=" << (names.empty() ? "-" : names)
        << " survival=" << format_double(pathway_survival(dp, prog->cycle)) << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const SimulateOptions &opt, std::ostream &out, std::ostream &err) {
  auto prog = load_program(opt.file, err);
  if (!prog)
    return kExitUsage;
  if (opt.powder < 1 || opt.lb_f1 < 0.0 || opt.lb_f2 < 0.0 || opt.cycles < 1) {
    err << "error: --powder and --cycles must be >= 1, line broadening >= 0\n";
    return kExitUsage;
  }

  std::optional<Rational> shear;
  if (opt.shear == "auto") {
    shear = broadening_ratio(prog->spin, representative_transition(prog->spin, TransitionLabel{1}),
                             representative_transition(prog->spin, TransitionLabel{0}));
  } else if (!opt.shear.empty()) {
    shear = parse_rational(opt.shear);
    if (!shear) {
      err << "error: --shear expects p/q or auto, got '" << opt.shear << "'\n";
      return kExitUsage;
    }
  }
  const double chi = opt.chi_deg ? deg_to_rad(*opt.chi_deg) : magic_angle();

  const auto routes = gated_routes(*prog, opt.cycles);
  std::string admitted, blocked;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    std::string &list = routes[i].weight == complexd{} ? blocked : admitted;
    list += (list.empty() ? "" : ",") + prog->routes[i].name;
  }

  const auto fid = synthesize_interferogram(*prog, routes, powder_orientations(opt.powder), chi);
  const Spectrum2D spec = shear ? shear_spectrum(fid, *shear, opt.lb_f2, opt.lb_f1)
                                : spectrum_from_interferogram(fid, opt.lb_f2, opt.lb_f1);

  auto write = [&](const std::string &path, auto &&writer) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
      throw std::runtime_error("cannot write '" + path + "'");
    writer(f);
  };
  write(opt.out, [&](std::ostream &f) { write_spectrum_csv(f, spec); });
  const Projection1D f1 = axis_projection(spec, Axis::F1);
  const Projection1D f2 = axis_projection(spec, Axis::F2);
  if (!opt.proj_f1.empty())
    write(opt.proj_f1, [&](std::ostream &f) { write_projection_csv(f, f1); });
  if (!opt.proj_f2.empty())
    write(opt.proj_f2, [&](std::ostream &f) { write_projection_csv(f, f2); });

  const auto scans = opt.cycles * acquisitions_per_cycle(prog->cycle);
  out << "routes_admitted=" << (admitted.empty() ? "-" : admitted) << '\n'
      << "routes_blocked=" << (blocked.empty() ? "-" : blocked) << '\n'
      << "acquisitions_per_cycle=" << acquisitions_per_cycle(prog->cycle) << '\n'
      << "scans=" << scans << '\n'
      << "shear=" << (shear ? to_string(*shear) : std::string("none")) << '\n'
      << "integral=" << format_double(integral_2d(spec)) << '\n';

  int code = kExitOk;
  auto report = [&](const char *name, const Projection1D &proj) {
    try {
      const PeakWidth w = fwhm_of_projection(proj);
      out << "fwhm_" << name << "_hz=" << format_double(w.hz) << '\n'
          << "fwhm_" << name << "_ppm=" << format_double(w.ppm) << '\n';
    } catch (const std::domain_error &e) {
      err << "error: " << name << " projection: " << e.what() << '\n';
      code = kExitDomain;
    }
  };
  report("f1", f1);
  report("f2", f2);

  if (opt.ascii)
    out << render_ascii(spec);
  return code;
}

int cmd_ratios(const std::string &spin_text, std::ostream &out, std::ostream &err) {
  auto spin = parse_half_int(spin_text);
  if (!spin || !is_half_integer_quadrupolar(*spin)) {
    err << "error: spin must be a half-integer >= 3/2, got '" << spin_text << "'\n";
    return kExitUsage;
  }
  const Transition ct = representative_transition(*spin, TransitionLabel{0});
  out << "CT-CT " << to_string(broadening_ratio(*spin, ct, ct)) << '\n';
  for (int k = 1; label_exists(*spin, TransitionLabel{k}); ++k) {
    const Transition st = representative_transition(*spin, TransitionLabel{k});
    out << to_string(st.label) << "-CT " << to_string(broadening_ratio(*spin, st, ct)) << '\n';
  }
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Satellite-transition NMR phase-cycling simulator", "stmas-sim"};
  app.require_subcommand(1);

  std::string pathways_file;
  std::optional<int> pmax;
  auto *pathways = app.add_subcommand("pathways", "List coherence pathways admitted by the phase cycle");
  pathways->add_option("file", pathways_file, "Pulse program (.pp)")->required();
  pathways->add_option("--pmax", pmax, "Override the coherence-order bound (default 2S)");

  SimulateOptions sim;
  auto *simulate = app.add_subcommand("simulate", "Synthesize, transform and measure a 2D spectrum");
  simulate->add_option("file", sim.file, "Pulse program (.pp)")->required();
  simulate->add_option("--out", sim.out, "Spectrum CSV path")->capture_default_str();
  simulate->add_option("--proj-f1", sim.proj_f1, "F1 projection CSV path");
  simulate->add_option("--proj-f2", sim.proj_f2, "F2 projection CSV path");
  simulate->add_option("--powder", sim.powder, "Powder orientations")->capture_default_str();
  simulate->add_option("--lb-f2", sim.lb_f2, "F2 line broadening (Hz)")->capture_default_str();
  simulate->add_option("--lb-f1", sim.lb_f1, "F1 line broadening (Hz)")->capture_default_str();
  simulate->add_option("--shear", sim.shear, "Shear ratio p/q, or auto for ST1/CT");
  simulate->add_option("--cycles", sim.cycles, "Complete phase cycles summed")->capture_default_str();
  simulate->add_option("--chi-deg", sim.chi_deg, "Spinning angle in degrees (default magic angle)");
  simulate->add_flag("--ascii", sim.ascii, "Print a coarse contour map");

  std::string spin_text;
  auto *ratios = app.add_subcommand("ratios", "Print exact ridge-slope ratios against the CT");
  ratios->add_option("spin", spin_text, "Spin, e.g. 5/2")->required();

  std::vector<const char *> argv{"stmas-sim"};
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*pathways)
      return cmd_pathways(pathways_file, pmax, out, err);
    if (*simulate)
      return cmd_simulate(sim, out, err);
    return cmd_ratios(spin_text, out, err);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

} // namespace stmas
