// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "wavebound/bounds.hpp"
#include "wavebound/estimator.hpp"
#include "wavebound/simulation.hpp"
#include "wavebound/specfun.hpp"
#include "wavebound/spectrum.hpp"
#include "wavebound/verify.hpp"

using namespace wavebound;
using std::numbers::pi;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
  return g;
}

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Outcome constants_check() {
  double l = solve_lambda();
  double z = airy_root_magnitude();
  bool ok = std::round(l * 1e4) / 1e4 == 0.7246 && std::abs(z - 2.338107410) <= 1e-8;
  std::ostringstream os;
  os.precision(12);
  os << "lambda=" << l << " |z_A|=" << z;
  return {ok, os.str()};
}

Outcome bound_identity() {
  const double inf = std::numeric_limits<double>::infinity();
  double worst = 0.0, worst_p = 0.0;
  for (double t0 : log_grid(1e-2, 1e2, 20)) {
    for (double tf : log_grid(1e-2, 1e2, 20)) {
      double ref = z_numeric_oracle(t0, tf, inf);
      worst = std::max(worst, std::abs(z_bound(t0, tf).value / ref - 1));
      double refp = z_numeric_oracle(t0, tf, pi);
      worst_p = std::max(worst_p, std::abs(z_bound_periodic(t0, tf).value / refp - 1));
    }
  }
  double cont = 0.0;
  for (double t0 : log_grid(1e-2, 1e2, 20)) {
    double tf = std::sqrt(pi) * t0 / 2;
    cont = std::max(cont, std::abs(z_branch_value(Branch::noise_limited, t0, tf) -
                                   z_branch_value(Branch::prior_limited, t0, tf)));
  }
  for (double tf : {4.0, 10.0, 50.0}) {
    double t0 = 2 * std::sqrt(pi);
    cont = std::max(cont, std::abs(z_bound_periodic(t0 * (1 - 1e-13), tf).value -
                                   z_bound_periodic(t0 * (1 + 1e-13), tf).value));
  }
  for (double t0 : {5.0, 20.0, 80.0}) {
    cont = std::max(cont, std::abs(z_bound_periodic(t0, pi * (1 - 1e-13)).value -
                                   z_bound_periodic(t0, pi * (1 + 1e-13)).value));
  }
  double edge = std::abs(z_bound(2.0, std::sqrt(pi)).value - 11 * pi / 420);
  cont = std::max(cont, edge);
  std::ostringstream os;
  os << "max rel err Z=" << worst << " Z_pi=" << worst_p << " continuity=" << cont;
  return {worst <= 1e-8 && worst_p <= 1e-8 && cont < 1e-10, os.str()};
}

Outcome heisenberg_scaling() {
  const std::vector<double> fluxes{1e2, 1e3, 1e4};
  const double cz = lower_bound_coefficient(2.0), ca = achievable_coefficient(2.0);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  bool band = true;
  std::ostringstream os;
  os.precision(4);
  for (double f : fluxes) {
    SimulationConfig c;
    c.spec = PowerLawSpectrum(2.0, 1.0, 0.01);
    c.flux = f;
    c.trials = 200;
    c.seed = 20260;
    c.mode = Mode::periodic;
    c.jobs = worker_count();
    SimulationReport r = run_simulation(c);
    double mse = r.budget.total_modulo;
    double scale = std::pow(f, -2.0 / 3);
    band = band && mse >= cz * scale && mse <= 3 * ca * scale;
    os << "N=" << f << " mse=" << mse << " ";
    double x = std::log(f), y = std::log(mse);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(fluxes.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  os << "slope=" << slope;
  return {band && std::abs(slope + 2.0 / 3) <= 0.08, os.str()};
}

Outcome aliasing_budget() {
  bool ok = true;
  std::ostringstream os;
  os.precision(4);
  for (double p : {2.0, 3.0}) {
    SimulationConfig c;
    c.spec = PowerLawSpectrum(p, 1.0, 0.01);
    c.period = 0.1;
    c.flux = 1.0;
    c.noise_std = 0.0;
    c.trials = 200;
    c.seed = 4;
    c.mode = Mode::plain;
    c.jobs = worker_count();
    SimulationReport r = run_simulation(c);
    double ratio = r.budget.aliasing / r.aliasing_approx;
    os << "p=" << p << " ratio=" << ratio << " ";
    ok = ok && std::abs(ratio - 1) <= 0.1;
  }
  return {ok, os.str()};
}

Outcome tail_constants() {
  std::vector<double> grid;
  for (int i = 1; i < 2000; ++i) grid.push_back(i / 2000.0);
  WrapScan scan = wrap_constant_scan(grid, 100000);
  double worst = 0.0;
  for (double x : {0.1, 0.25, 0.5}) {
    for (int m = -5; m <= 5; ++m) {
      worst = std::max(worst, std::abs(digamma_tail_coefficient(m, x) - sinc_tail_sum(m, x, 1000000).value));
    }
  }
  std::ostringstream os;
  os.precision(10);
  os << "max=" << scan.max_value << " at " << scan.argmax << " digamma-vs-sinc=" << worst
     << " distance to 1-1/pi=" << std::abs(scan.max_value - (1 - 1 / pi));
  bool ok = std::abs(scan.max_value - 0.68169) <= 1e-4 && std::abs(scan.argmax - 0.5) <= 1e-3 && worst <= 1e-6;
  return {ok, os.str()};
}

Outcome increment_dominance() {
  bool ok = true;
  double tightest = 0.0;
  for (double p : {1.5, 2.0, 2.5, 3.0, 4.0}) {
    PowerLawSpectrum s(p, 1.0, 0.01);
    for (double kd : log_grid(1e-3, 0.3, 25)) {
      double ratio = increment_variance(s, kd) / increment_variance_bound(s, kd);
      ok = ok && ratio <= 1.0;
      tightest = std::max(tightest, ratio);
    }
  }
  PowerLawSpectrum s2(2.0, 1.0, 0.01);
  double small = increment_variance(s2, 1e-3) / increment_variance_bound(s2, 1e-3);
  std::ostringstream os;
  os << "max ratio=" << tightest << " p=2 ratio at 1e-3=" << small;
  return {ok && std::abs(small - 1) <= 0.05, os.str()};
}

Outcome covariance_check() {
  bool ok = true;
  double worst = 0.0;
  for (double p : {2.0, 3.0}) {
    for (double g : {0.01, 0.1}) {
      PowerLawSpectrum s(p, 1.0, g);
      for (int n = 2; n <= 50; ++n) {
        CovarianceVn v = covariance_Vn(s, 1.0, n);
        worst = std::max(worst, std::abs(v.value) / v.bound);
        ok = ok && std::abs(v.value) <= v.bound;
      }
    }
  }
  PowerLawSpectrum s(2.0, 1.0, 0.01);
  double half = covariance_Vn(s, 1.0, 40).bound / covariance_Vn(s, 1.0, 20).bound;
  std::ostringstream os;
  os << "max |V_n|/bound=" << worst << " bound(40)/bound(20)=" << half;
  return {ok && std::abs(half - 0.5) <= 0.02, os.str()};
}

Outcome fidelity_chain() {
  const double l = constants().lambda;
  double margin = std::numeric_limits<double>::infinity();
  for (double nbar : log_grid(0.1, 100.0, 40)) {
    std::vector<double> n{0.5 * nbar, 0.3 * nbar, 0.2 * nbar}, v{1.0, -0.7, 2.2};
    double s = 0;
    for (int j = 0; j < 3; ++j) s += n[j] * std::abs(v[j]);
    double tauF = 1 / (2 * l * s);
    for (int i = 0; i < 25; ++i) {
      double tau = 1.5 * tauF * i / 24;
      margin = std::min(margin, coherent_fidelity(n, v, tau) - fidelity_lower_bound(tau, tauF));
    }
  }
  double erfc_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 100000; ++i) {
    double z = 5.0 * i / 100000;
    erfc_margin = std::min(erfc_margin, wavebound::erfc(z) - triangle(2 * z / std::sqrt(pi)));
  }
  double cos_violation = cosine_bound_violation(l);
  std::ostringstream os;
  os << "fidelity margin=" << margin << " erfc margin=" << erfc_margin << " cosine violation=" << cos_violation;
  return {margin >= -1e-15 && erfc_margin >= 0 && cos_violation == 0.0, os.str()};
}

Outcome determinism() {
  std::vector<std::string> base{"simulate", "--p",      "2",    "--kappa", "1",        "--gamma", "0.01",
                                "--flux",   "1e3",      "--trials", "20",  "--seed",   "42",      "--mode",
                                "periodic"};
  auto invoke = [&](const char* jobs) {
    std::vector<std::string> a = base;
    a.push_back("--jobs");
    a.push_back(jobs);
    std::ostringstream out, err;
    int code = cli::run(a, out, err);
    return std::make_pair(code, out.str());
  };
  auto a = invoke("1");
  auto b = invoke("1");
  auto c = invoke("3");
  bool ok = a.first == 0 && b.first == 0 && c.first == 0 && a.second == b.second && a.second == c.second &&
            !a.second.empty();
  return {ok, ok ? "identical reports across runs and jobs=1/3" : "reports differ"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "constants", 1, constants_check},
      {2, "bound identity", 10, bound_identity},
      {3, "heisenberg scaling", 600, heisenberg_scaling},
      {4, "aliasing budget", 120, aliasing_budget},
      {5, "wrap and digamma constants", 30, tail_constants},
      {6, "increment dominance", 60, increment_dominance},
      {7, "covariance bound", 60, covariance_check},
      {8, "fidelity chain", 10, fidelity_chain},
      {9, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = o.ok && secs <= c.budget_s;
    if (!ok) ++failed;
    std::printf("%s AC%d %s (%.2fs, budget %.0fs): %s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
