#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "backlund/chart.hpp"
#include "backlund/errors.hpp"
#include "backlund/integrate.hpp"
#include "backlund/verify.hpp"
#include "problem.hpp"

namespace backlund::cli {
namespace {

using nlohmann::ordered_json;

struct Options {
  std::string problem;
  std::optional<int> grid;
  std::optional<double> tol;
  std::optional<std::string> solution;
  std::string steps;
  std::string output = "-";
  std::string csv = "-";
  std::string json = "-";
  double rk_tol = 1e-9;
  double max_dev = 1e-5;
  std::optional<double> z0;
  std::optional<double> z1;
  int samples = 50;
  unsigned seed = 1;
};

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double env_tolerance() {
  const char* raw = std::getenv(kToleranceEnv);
  if (raw == nullptr || *raw == '\0') return kDefaultTolerance;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw ProblemError(kToleranceEnv, "expected a positive number, got '" + std::string(raw) + "'");
  }
  return v;
}

double tolerance_for(const Options& o, const Problem& pb) {
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw ProblemError("--tol", "must be positive");
    return *o.tol;
  }
  return pb.tolerance ? *pb.tolerance : env_tolerance();
}

int grid_for(const Options& o, const Problem& pb) {
  const int n = o.grid ? *o.grid : pb.grid;
  if (n < 2) throw ProblemError("--grid", "need at least 2 points");
  return n;
}

Problem load(const Options& o) {
  Overrides ov;
  ov.solution_expr = o.solution;
  if (!o.steps.empty()) ov.steps = parse_steps(o.steps);
  return load_problem_file(o.problem, ov);
}

// Writes to `path`, or to `out` for "-".
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
  if (path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw ProblemError(path, "cannot open for writing");
  write(file);
}

void write_csv(std::ostream& os, const Problem& pb, int n) {
  os << "z,y,dy,d2y,residual\n";
  for (double z : scan_points(pb.solution.domain(), n)) {
    const Jet j = pb.solution.jet(z, 3);
    os << g17(z) << ',' << g17(j.value()) << ',' << g17(j.derivative(1)) << ',' << g17(j.derivative(2)) << ','
       << g17(pb.form(j).residual) << '\n';
  }
}

ordered_json report_json(const Problem& pb, const GridReport& r) {
  ordered_json j;
  j["problem"] = pb.name;
  j["tolerance"] = r.tolerance;
  j["n_points"] = r.n_points;
  j["max_abs_residual"] = r.max_abs_residual;
  j["max_rel_residual"] = r.max_rel_residual;
  j["argmax_z"] = r.argmax_z;
  j["pass"] = r.pass();
  return j;
}

GridReport scan(const Problem& pb, int n, double tol) {
  return grid_scan(pb.solution, pb.form, pb.solution.domain(), n, tol);
}

int cmd_generate(const Options& o, std::ostream& out) {
  const Problem pb = load(o);
  const int n = grid_for(o, pb);
  emit(o.output, out, [&](std::ostream& os) { write_csv(os, pb, n); });
  return kExitPass;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Problem pb = load(o);
  const GridReport r = scan(pb, grid_for(o, pb), tolerance_for(o, pb));
  emit(o.output, out, [&](std::ostream& os) { os << report_json(pb, r).dump(2) << '\n'; });
  return r.pass() ? kExitPass : kExitCheckFailed;
}

int cmd_ladder(const Options& o, std::ostream& out) {
  if (o.steps.empty()) throw ProblemError("--steps", "required, e.g. \"1,1;1,1\"");
  const Problem pb = load(o);
  if (!pb.ladder) throw ProblemError("family", "ladder needs an emden-fowler-1 problem");
  const int n = grid_for(o, pb);
  const GridReport r = scan(pb, n, tolerance_for(o, pb));
  ordered_json j = report_json(pb, r);
  j["R"] = pb.ladder->R;
  j["S"] = pb.ladder->S;
  j["steps"] = pb.ladder->steps.size();
  emit(o.csv, out, [&](std::ostream& os) { write_csv(os, pb, n); });
  emit(o.json, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return r.pass() ? kExitPass : kExitCheckFailed;
}

int cmd_crosscheck(const Options& o, std::ostream& out) {
  const Problem pb = load(o);
  const Interval dom = pb.solution.domain();
  const double z0 = o.z0.value_or(dom.lo);
  const double z1 = o.z1.value_or(std::min(dom.hi, z0 + 1.0));
  if (!dom.contains(z0) || !dom.contains(z1)) throw ProblemError("--z0/--z1", "outside the solution domain");
  if (!(o.rk_tol >= kMinRkTolerance && o.rk_tol <= kMaxRkTolerance)) {
    throw ProblemError("--rk-tol", "must lie in [1e-12, 1e-3]");
  }
  const Jet init = pb.solution.jet(z0, 1);
  ordered_json j;
  j["problem"] = pb.name;
  j["rk_tolerance"] = o.rk_tol;
  j["z0"] = z0;
  j["z1"] = z1;
  j["max_deviation_allowed"] = o.max_dev;
  bool pass = false;
  try {
    const Trajectory traj = rk_integrate(pb.structure, init.value(), init.derivative(1), z0, z1, o.rk_tol);
    const double dev = crosscheck(pb.solution, traj);
    pass = dev <= o.max_dev;
    j["accepted_steps"] = traj.accepted_steps;
    j["rejected_steps"] = traj.rejected_steps;
    j["max_deviation"] = dev;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SolutionEscape && e.kind() != ErrorKind::StepUnderflow) throw;
    j["error"] = e.what();
  }
  j["pass"] = pass;
  emit(o.output, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return pass ? kExitPass : kExitCheckFailed;
}

int cmd_fde_cert(const Options& o, std::ostream& out) {
  const Problem pb = load(o);
  if (!pb.f) throw ProblemError("solution", "fde-cert needs a problem with a Backlund map f");
  if (o.samples < 1) throw ProblemError("--samples", "must be positive");
  const double tol = o.tol ? *o.tol : 1e-9;
  const Interval dom = pb.solution.domain();
  std::mt19937 rng(o.seed);
  std::uniform_real_distribution<double> uz(dom.lo, dom.hi);
  std::uniform_real_distribution<double> uv(0.1, 5.0);
  double worst = 0.0;
  double worst_z = dom.lo;
  double worst_v = 1.0;
  for (int i = 0; i < o.samples; ++i) {
    const double z = uz(rng);
    const double v = uv(rng);
    const double r = std::fabs(fde_residual(pb.structure, *pb.f, z, v)) / (1.0 + std::fabs(pb.structure(z, v)));
    if (r > worst || i == 0) {
      worst = r;
      worst_z = z;
      worst_v = v;
    }
  }
  ordered_json j;
  j["problem"] = pb.name;
  j["tolerance"] = tol;
  j["samples"] = o.samples;
  j["max_rel_residual"] = worst;
  j["argmax_z"] = worst_z;
  j["argmax_v"] = worst_v;
  j["pass"] = worst <= tol;
  emit(o.output, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return worst <= tol ? kExitPass : kExitCheckFailed;
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::NoRealSeed:
    case ErrorKind::DegenerateMap:
    case ErrorKind::DuplicateExponent:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Backlund-chart solution generator and certifier", "backlund"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("problem", o.problem, "Problem file (JSON)")->required();
    sub->add_option("--solution", o.solution, "Replace the candidate solution by an expression in z");
  };
  auto add_grid = [&o](CLI::App* sub) {
    sub->add_option("--grid", o.grid, "Number of grid points");
    sub->add_option("--tol", o.tol, "Relative residual tolerance (default: problem, $BACKLUND_TOL, 1e-8)");
  };

  CLI::App* generate = app.add_subcommand("generate", "Write the solution table as CSV");
  add_common(generate);
  generate->add_option("--grid", o.grid, "Number of grid points");
  generate->add_option("-o,--output", o.output, "Output path, - for stdout");

  CLI::App* verify = app.add_subcommand("verify", "Residual scan; writes a JSON report");
  add_common(verify);
  add_grid(verify);
  verify->add_option("-o,--output", o.output, "Output path, - for stdout");

  CLI::App* ladder = app.add_subcommand("ladder", "Apply a first-example step list; writes CSV and JSON");
  ladder->add_option("problem", o.problem, "Problem file (JSON)")->required();
  ladder->add_option("--steps", o.steps, "Steps as \"Delta,K;Delta,K;...\"")->required();
  add_grid(ladder);
  ladder->add_option("--csv", o.csv, "CSV path, - for stdout");
  ladder->add_option("--json", o.json, "JSON report path, - for stdout");

  CLI::App* cross = app.add_subcommand("crosscheck", "Integrate from the solution's initial data and compare");
  add_common(cross);
  cross->add_option("--rk-tol", o.rk_tol, "Local error tolerance of the integrator");
  cross->add_option("--max-dev", o.max_dev, "Allowed max |y - y_rk|");
  cross->add_option("--z0", o.z0, "Start (default: domain start)");
  cross->add_option("--z1", o.z1, "End (default: z0 + 1 clipped to the domain)");
  cross->add_option("-o,--output", o.output, "Output path, - for stdout");

  CLI::App* fde = app.add_subcommand("fde-cert", "Sample the functional differential equation residual of f");
  fde->add_option("problem", o.problem, "Problem file (JSON)")->required();
  fde->add_option("--samples", o.samples, "Number of random (z, v) samples");
  fde->add_option("--seed", o.seed, "Sampling seed");
  fde->add_option("--tol", o.tol, "Relative tolerance (default 1e-9)");
  fde->add_option("-o,--output", o.output, "Output path, - for stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    if (generate->parsed()) return cmd_generate(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (ladder->parsed()) return cmd_ladder(o, out);
    if (cross->parsed()) return cmd_crosscheck(o, out);
    return cmd_fde_cert(o, out);
  } catch (const ProblemError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.kind()) ? kExitInvalidInput : kExitCheckFailed;
  }
}

}  // namespace backlund::cli
