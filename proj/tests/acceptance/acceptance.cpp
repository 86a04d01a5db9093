// One PASS/FAIL line per acceptance criterion, followed by the individual items.
//   acceptance                 run every criterion
//   acceptance --criterion 4   run one
// Exit status is 0 iff every requested criterion passes.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "subdiff/config.hpp"
#include "subdiff/estimator.hpp"
#include "subdiff/runner.hpp"

namespace fs = std::filesystem;
using namespace subdiff;

namespace {

struct Item {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<void(std::vector<Item>&)> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "subdiff_acceptance" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Runs one configured experiment and appends its acceptance items, prefixed by label.
// Items named in `skip` are outside the criterion and are dropped.
void experiment(std::vector<Item>& out, const std::string& label, const std::string& text,
                const std::vector<std::string>& skip = {}) {
  RunOptions o;
  o.out = scratch(label);
  const auto r = run_experiment(Config::parse(text, label + ".cfg"), o);
  if (r.items.empty()) out.push_back({label, false, "experiment produced no acceptance items"});
  for (const auto& it : r.items)
    if (std::find(skip.begin(), skip.end(), it.name) == skip.end())
      out.push_back({label + ": " + it.name, it.pass, it.detail});
}

// 1 ---------------------------------------------------------------------------

void sampler_calibration(std::vector<Item>& out) {
  const std::vector<std::pair<std::string, LaplaceExponent>> cat = {
      {"stable(1)", LaplaceExponent::stable(1.0)},
      {"conjugate_geometric_stable(1)", LaplaceExponent::conjugate_geometric_stable(1.0)},
      {"conjugate_gamma", LaplaceExponent::conjugate_gamma()},
      {"exponential_levy", LaplaceExponent::exponential_levy()},
      {"drift_only", LaplaceExponent::drift_only()},
      {"custom_tempered(0.5,0.5,2)", LaplaceExponent::custom_tempered(0.5, 0.5, 2.0)},
  };
  const std::vector<double> lam = {0.1, 0.5, 1.0, 2.0, 5.0};
  for (const auto& [name, e] : cat) {
    double worst = 0.0;
    bool ok = true;
    for (double t : {0.1, 1.0}) {
      const auto est = estimate_laplace_transform(e, t, lam, 1.0, McRun{100000, 101, Exec::parallel()});
      for (std::size_t k = 0; k < lam.size(); ++k) {
        const double ref = std::exp(-t * e.full(lam[k]));
        const double err = std::abs(est[k].value - ref);
        if (est[k].std_error == 0.0) {
          ok = ok && err <= 1e-14 * ref;
        } else {
          worst = std::max(worst, err / est[k].std_error);
          ok = ok && err <= 3.0 * est[k].std_error;
        }
      }
    }
    out.push_back({name, ok, "max |z| = " + fmt("%.3g", worst) + " over t in {0.1, 1}, 5 lambdas (limit 3)"});
  }
}

// 2 ---------------------------------------------------------------------------

void diffusion_oracles(std::vector<Item>& out) {
  experiment(out, "interval_exit_time",
             "kind = exit-time\nphi = drift_only\ndomain = interval\nx = 0.5\nn = 100000; dt = 1e-4\nseed = 201\n"
             "band.oracle_z = 3\n");
  experiment(out, "disk_exit_time",
             "kind = exit-time\nphi = drift_only\ndomain = ball; dim = 2\nx = 0, 0\nn = 100000; dt = 1e-4\n"
             "seed = 202\nband.oracle_z = 3\n");
  experiment(out, "halfspace_survival",
             "kind = survival\nphi = drift_only\ndomain = half_space; dim = 1\ndelta = 0.05, 0.2\n"
             "t = 0.1, 0.5\nn = 100000; dt = 1e-4\nseed = 203\nband.oracle_z = 3\n");
}

// 3 ---------------------------------------------------------------------------

void exit_time_comparability(std::vector<Item>& out) {
  const std::string common = "kind = exit-time\nphi = stable; beta = 1\ndelta = 0.5, 0.2, 0.1, 0.05, 0.02\n"
                             "n = 20000; dt = 1e-4\nband.ratio = 4\nband.censored_max = 0.001\n";
  experiment(out, "interval_ratio", common + "domain = interval\nseed = 301\n");
  experiment(out, "disk_ratio", common + "domain = ball; dim = 2\nseed = 302\nscale_radii = 0.25, 0.5, 1\n"
                                         "band.scaling_z = 3\n");
}

// 4 ---------------------------------------------------------------------------

void boundary_decay(std::vector<Item>& out) {
  const std::string deltas = "delta = 0.01, 0.015, 0.02, 0.03, 0.05, 0.07, 0.1\n";
  experiment(out, "survival_slope",
             "kind = survival\nphi = stable; beta = 1\ndomain = interval\nt = 0.25\n" + deltas +
                 "n = 100000; dt = 1e-4\nseed = 401\nband.slope_target = 1; band.slope_tol = 0.2\n");
  experiment(out, "exit_to_interior_slope",
             "kind = exit-dist\nphi = stable; beta = 1\ndomain = half_space; dim = 2\nr = 0.5\n" + deltas +
                 "n = 100000; dt = 1e-4\nseed = 402\nband.slope_target = 1; band.slope_tol = 0.2\n");
}

// 5 ---------------------------------------------------------------------------

void theorem_t0(std::vector<Item>& out) {
  experiment(out, "t0_band",
             "kind = verify-T0\nphi = stable; beta = 1\ndim = 1\nt = 0.01, 0.05, 0.2, 1\n"
             "distance = 0, 0.1, 0.5, 1, 2, 3\nn = 100000\nseed = 501\nband.limit = 1000; band.stability = 0.2\n"
             "envelope.c1 = 0.5; envelope.c2 = 0.5\n");
}

// 6 ---------------------------------------------------------------------------

void corollary_c1(std::vector<Item>& out) {
  experiment(out, "ball_green_slope",
             "kind = verify-C1\nphi = stable; beta = 1\ndomain = ball; dim = 3; radius = 2\ngreen_mode = radial\n"
             "radii = 0.05, 0.075, 0.1, 0.15, 0.2, 0.3\nhalf_width = 0.02\nn = 5000; dt = 1e-3\nseed = 601\n");
  experiment(out, "interval_occupation_band",
             "kind = verify-C1\nphi = stable; beta = 1\ndomain = interval\ngreen_mode = occupation\n"
             "x = 0.1, 0.3, 0.5, 0.7, 0.9\nn = 20000; dt = 1e-4\nseed = 602\nband.limit = 10\n");
}

// 7 ---------------------------------------------------------------------------

void quadrature_suite(std::vector<Item>& out) {
  // the psi0 decay check is stated for beta = 1; at beta = 1.5 psi0(1e-4) / psi0(1e-2) is exactly 1/10
  for (const std::string beta : {"0.5", "1", "1.5"})
    experiment(out, "oracle_beta_" + beta, "kind = oracle-checks\nphi = stable; beta = " + beta + "\n",
               beta == "1" ? std::vector<std::string>{} : std::vector<std::string>{"psi0 vanishes at 0"});
}

// 8 ---------------------------------------------------------------------------

void example_exponents(std::vector<Item>& out) {
  experiment(out, "cgs_scaling",
             "kind = bf-diagnostics\nphi = conjugate_geometric_stable; beta = 1\nwindow.lo = 10; window.hi = 1e5\n"
             "band.delta_max = 1.05; band.gamma_min = 0.5\n");
  experiment(out, "cg_small_lambda",
             "kind = bf-diagnostics\nphi = conjugate_gamma\nlambda = 1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3, 1\n"
             "window.lo = 1e-4; window.hi = 1\nband.fitted_target = 2; band.fitted_tol = 0.15\n");
  experiment(out, "cg_large_lambda",
             "kind = bf-diagnostics\nphi = conjugate_gamma\nwindow.lo = 10; window.hi = 1e5\nband.delta_max = 1.05\n");
}

// 9 ---------------------------------------------------------------------------

void structural_invariants(std::vector<Item>& out) {
  const auto e = LaplaceExponent::stable(1.0);
  PathOptions o;
  o.dt = 1e-3;
  o.horizon = 5.0;
  const PathSampler big(DiffusionSpec::identity(2), e, Domain::ball(Point{0.0, 0.0}, 1.0), o);
  const PathSampler small(DiffusionSpec::identity(2), e, Domain::ball(Point{0.0, 0.0}, 0.6), o);
  const McRun run{100000, 901, Exec::parallel()};
  const auto ord = check_lifetime_ordering(big, Point{0.3, 0.0}, run);
  out.push_back({"lifetime ordering", ord.n == 100000 && ord.violations == 0,
                 std::to_string(ord.violations) + " violations in " + std::to_string(ord.n) + " coupled paths"});
  const auto mono = check_domain_monotonicity(big, small, Point{0.3, 0.0}, 0.5, run);
  out.push_back({"domain monotonicity", mono.violations == 0,
                 std::to_string(mono.violations) + " violations in " + std::to_string(mono.n) + " coupled paths"});

  const fs::path dir = scratch("cli_determinism");
  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "kind = survival\nphi = stable; beta = 1\ndomain = ball; dim = 2\nt = 0.05, 0.1\n"
                        "n = 2000\nseed = 902\n";
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  };
  bool same = true;
  std::string detail = "report.json, summary.txt, survival.csv identical across 3 runs (1 and 3 workers)";
  const std::string cli = SUBDIFF_CLI_PATH;
  int k = 0;
  for (int workers : {1, 1, 3}) {
    const std::string cmd = "\"" + cli + "\" --config \"" + cfg.string() + "\" --out \"" +
                            (dir / std::to_string(k++)).string() + "\" --workers " + std::to_string(workers) +
                            " > /dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
      same = false;
      detail = "cli exited with status " + std::to_string(rc);
    }
  }
  for (const char* f : {"report.json", "summary.txt", "survival.csv"}) {
    const auto a = slurp(dir / "0" / f);
    if (a.empty() || a != slurp(dir / "1" / f) || a != slurp(dir / "2" / f)) {
      same = false;
      detail = std::string(f) + " differs between runs";
    }
  }
  out.push_back({"cli determinism", same, detail});
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "sampler calibration (Laplace transform of S_t)", 120, sampler_calibration},
      {2, "diffusion oracle equivalence", 300, diffusion_oracles},
      {3, "exit-time comparability and r^2 scaling", 600, exit_time_comparability},
      {4, "boundary decay exponent", 600, boundary_decay},
      {5, "heat-kernel envelope band (free space)", 300, theorem_t0},
      {6, "Green function structure", 900, corollary_c1},
      {7, "quadrature suite", 600, quadrature_suite},
      {8, "example exponents scaling witnesses", 60, example_exponents},
      {9, "structural invariants", 0, structural_invariants},
  };
  return all;
}

bool run_criterion(const Criterion& c) {
  std::vector<Item> items;
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    c.body(items);
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = error.empty() && !items.empty();
  for (const auto& it : items) pass = pass && it.pass;
  const bool in_budget = c.budget_s <= 0 || secs <= c.budget_s;
  pass = pass && in_budget;
  std::string timing = fmt("%.1f s", secs);
  if (c.budget_s > 0) timing += fmt(", budget %.0f s", c.budget_s);
  std::printf("criterion %d: %s  %s (%s)\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), timing.c_str());
  for (const auto& it : items)
    std::printf("    %s  %s: %s\n", it.pass ? "pass" : "FAIL", it.name.c_str(), it.detail.c_str());
  if (!error.empty()) std::printf("    FAIL  error: %s\n", error.c_str());
  if (!in_budget) std::printf("    FAIL  runtime over budget\n");
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);
  bool ok = true;
  for (const auto& c : criteria())
    if (only == 0 || c.id == only) ok = run_criterion(c) && ok;
  return ok ? 0 : 1;
}
