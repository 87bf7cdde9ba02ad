#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sumtrans/applications.hpp"
#include "sumtrans/errors.hpp"
#include "sumtrans/hypotheses.hpp"
#include "sumtrans/io.hpp"
#include "sumtrans/oracle.hpp"
#include "sumtrans/solver.hpp"
#include "sumtrans/translates.hpp"

namespace {

using namespace sumtrans;
using io::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;
constexpr std::size_t kProfileSamples = 4096;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> starts;

  void apply(SolveOptions& o) const {
    if (seed) o.seed = *seed;
    if (tol) {
      if (!(*tol > 0)) throw UsageError("--tol must be positive");
      o.tol = *tol;
    }
    if (starts) {
      if (*starts == 0) throw UsageError("--starts must be positive");
      o.starts = *starts;
    }
  }
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "start-point seed (overrides file)");
  cmd->add_option("--tol", o.tol, "residual tolerance (overrides file)");
  cmd->add_option("--starts", o.starts, "number of multistarts (overrides file)");
}

std::string fmt(double v) {
  if (v == kNegInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void print(const ordered_json& j) { std::cout << j.dump() << '\n'; }

std::vector<double> finite_values(const std::vector<ExtendedReal>& m) {
  std::vector<double> out;
  for (const auto& v : m) out.push_back(v.raw());
  return out;
}

Problem build_problem(const io::ProblemFile& file) {
  try {
    return file.problem();
  } catch (const std::invalid_argument& e) {
    throw HypothesisError(e.what());
  }
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path) {
  const io::ProblemFile file = io::parse_problem(io::load_json_file(path));
  bool ok = true;
  auto verdict = [&](bool holds, const std::string& line) {
    ok = ok && holds;
    std::cout << (holds ? "ok    " : "FAIL  ") << line << '\n';
  };

  for (std::size_t j = 0; j < file.kernels.size(); ++j) {
    const Kernel& k = file.kernels[j];
    const std::string tag = "kernel[" + std::to_string(j) + "] ";
    const SingularityVerdict s = check_singularity(k);
    verdict(s.holds, tag + (s.holds ? "singular at 0" : "singularity: " + s.detail));
    const SlopeLimits sl = k.slope_limits();
    const std::string slopes = "(" + fmt(sl.at_minus_infinity) + "," + fmt(sl.at_plus_infinity) + ")";
    verdict(sl.gm_holds, tag + (sl.gm_holds ? "GM holds: slopes " : "GM violated: slopes ") + slopes);
    if (!k.strictly_concave_claimed()) std::cout << "note  " << tag << "strict concavity not claimed\n";
  }

  const std::size_t support = file.field.finite_support_count();
  const bool count_ok = support > file.kernels.size();
  verdict(count_ok, count_ok ? "field finite at more than n points"
                             : "field finite at only " + std::to_string(support) + " points, n = " +
                                   std::to_string(file.kernels.size()));

  const AdmissibilityVerdict a = is_admissible(file.field, file.kernels);
  verdict(a.admissible, a.admissible ? "admissible" : "admissibility check failed: " + a.note);
  std::cout << "trail t,value\n";
  for (std::size_t i = 0; i < a.trail.t.size(); ++i) {
    std::cout << "  " << fmt(a.trail.t[i]) << ',' << fmt(a.trail.values[i]) << '\n';
  }
  return ok ? kExitOk : kExitMath;
}

// ------------------------------------------------------------------- solve

ordered_json solve_json(const Problem& problem, const SolveResult& r, const MaximaReport* maxima) {
  ordered_json out;
  out["y"] = io::number_array(r.y.values());
  if (maxima != nullptr) {
    const auto m = finite_values(maxima->m);
    out["m"] = io::number_array(m);
  } else {
    const MaximaReport rep = local_maxima(problem, r.y);
    out["m"] = io::number_array(finite_values(rep.m));
  }
  out["d"] = io::number_array(r.d_achieved.d);
  out["residual"] = io::number(r.residual);
  out["iterations"] = r.iterations;
  out["converged"] = r.converged;
  if (!r.hypotheses_verified) out["note"] = "hypotheses unverified";
  return out;
}

int cmd_solve(const std::string& path, const std::vector<double>& target, bool equi,
              const std::string& profile_path, const Overrides& ov) {
  io::ProblemFile file = io::parse_problem(io::load_json_file(path));
  ov.apply(file.solve);
  if (equi == !target.empty()) throw UsageError("give exactly one of --target and --equioscillate");
  if (!equi && target.size() != file.kernels.size()) throw UsageError("target length ≠ n");
  for (double d : target) {
    if (!std::isfinite(d)) throw UsageError("target entries must be finite");
  }
  const Problem problem = build_problem(file);
  require_main_hypotheses(problem);

  SolveResult result = [&] {
    try {
      return equi ? equioscillate(problem, file.solve).solve : invert_difference(problem, target, file.solve);
    } catch (const SolverFailure& f) {
      ordered_json out;
      if (f.best()) {
        out = solve_json(problem, *f.best(), nullptr);
        out["converged"] = false;
      } else {
        out["y"] = nullptr;
        out["residual"] = io::number(f.best_residual());
        out["converged"] = false;
      }
      print(out);
      throw;
    }
  }();
  const MaximaReport maxima = local_maxima(problem, result.y);
  print(solve_json(problem, result, &maxima));

  if (!profile_path.empty()) {
    std::ofstream csv(profile_path);
    if (!csv) throw UsageError("cannot write " + profile_path);
    const double tau = maxima.truncation_radius;
    write_profile(csv, problem, result.y, -tau, tau, kProfileSamples);
  }
  return kExitOk;
}

// ------------------------------------------------------------- interpolate

int cmd_interpolate(const std::string& path, const std::string& mode_flag, const Overrides& ov) {
  io::InterpolationFile file = io::parse_interpolation(io::load_json_file(path));
  ov.apply(file.solve);
  std::string mode = file.mode;
  if (!mode_flag.empty()) mode = mode_flag == "hf" ? "hermite_fejer" : "points";
  const bool hf = mode == "hermite_fejer";
  const InterpolationResult r = hf ? hermite_fejer_interpolate(file.problem, file.solve, file.search)
                                   : log_concave_interpolate(file.problem, file.solve, file.search);
  ordered_json out;
  out["C"] = io::number(r.C);
  out["y"] = io::number_array(r.y.values());
  if (hf) out["z"] = io::number_array(r.z);
  out["achieved"] = io::number_array(r.achieved);
  if (!r.hypotheses_verified) out["note"] = "hypotheses unverified";
  print(out);
  return kExitOk;
}

// --------------------------------------------------------------- ratio-map

int cmd_ratio_map(const std::string& path, const std::vector<double>& nodes) {
  const io::ProblemFile file = io::parse_problem(io::load_json_file(path));
  if (nodes.size() != file.kernels.size()) throw UsageError("node count ≠ n");
  std::vector<double> exponents;
  for (const Kernel& k : file.kernels) exponents.push_back(k.weight());
  NodeConfig y = [&] {
    try {
      return NodeConfig(nodes);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  if (!y.strictly_increasing()) throw UsageError("nodes must be strictly increasing");
  const std::vector<double> ratios = weighted_poly_ratio_map(y, file.field, exponents, file.search);
  ordered_json out;
  out["y"] = io::number_array(y.values());
  out["ratios"] = io::number_array(ratios);
  print(out);
  return kExitOk;
}

// ------------------------------------------------------------ oracle-check

int cmd_oracle_check(const std::string& path, const std::vector<double>& target, double step,
                     double extent, const Overrides& ov) {
  io::ProblemFile file = io::parse_problem(io::load_json_file(path));
  ov.apply(file.solve);
  const std::size_t n = file.kernels.size();
  if (n > 2) throw UsageError("oracle-check supports n = 1 or 2 only");
  if (target.size() != n) throw UsageError("target length ≠ n");
  const oracle::GridSpec spec{step, extent};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Problem problem = build_problem(file);
  const SolveResult solved = invert_difference(problem, target, file.solve);
  const oracle::GridInversion grid = oracle::grid_invert_detailed(problem, target, spec);
  double gap = 0.0;
  for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(solved.y[i] - grid.y[i]));
  const bool agree = gap <= 2.0 * step;
  ordered_json out;
  out["solver_y"] = io::number_array(solved.y.values());
  out["grid_y"] = io::number_array(grid.y.values());
  out["grid_objective"] = io::number(grid.objective);
  out["distance"] = io::number(gap);
  out["agree"] = agree;
  print(out);
  return agree ? kExitOk : kExitMath;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sums of translates: local maxima, difference map and its inversion"};
  app.require_subcommand(1);

  std::string path;
  Overrides ov;

  auto* validate = app.add_subcommand("validate", "check the hypotheses for a problem file");
  validate->add_option("problem", path, "problem JSON")->required();

  std::vector<double> target;
  bool equi = false;
  std::string profile;
  auto* solve = app.add_subcommand("solve", "invert the difference map");
  solve->add_option("problem", path, "problem JSON")->required();
  solve->add_option("--target", target, "target differences d_1..d_n");
  solve->add_flag("--equioscillate", equi, "solve D(y) = 0");
  solve->add_option("--emit-profile", profile, "write F(y, .) samples as CSV");
  add_overrides(solve, ov);

  std::string mode;
  auto* interp = app.add_subcommand("interpolate", "log-concave or Hermite-Fejer interpolation");
  interp->add_option("problem", path, "interpolation JSON")->required();
  interp->add_option("--mode", mode, "points or hf")->check(CLI::IsMember({"points", "hf"}));
  add_overrides(interp, ov);

  std::vector<double> nodes;
  auto* ratio = app.add_subcommand("ratio-map", "ratios of weighted polynomial maxima");
  ratio->add_option("problem", path, "problem JSON (log kernels give the exponents)")->required();
  ratio->add_option("--nodes", nodes, "nodes y_1 < ... < y_n")->required();

  double step = 1e-3;
  double extent = 10.0;
  auto* check = app.add_subcommand("oracle-check", "compare the solver with the grid oracle");
  check->add_option("problem", path, "problem JSON")->required();
  check->add_option("--target", target, "target differences")->required();
  check->add_option("--step", step, "grid step");
  check->add_option("--extent", extent, "grid half-width");
  add_overrides(check, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(path);
    if (*solve) return cmd_solve(path, target, equi, profile, ov);
    if (*interp) return cmd_interpolate(path, mode, ov);
    if (*ratio) return cmd_ratio_map(path, nodes);
    if (*check) return cmd_oracle_check(path, target, step, extent, ov);
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const HypothesisError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMath;
  } catch (const SolverFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMath;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMath;
  }
  return kExitUsage;
}
