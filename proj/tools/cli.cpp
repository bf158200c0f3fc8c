#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "wavebound/bounds.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/simulation.hpp"
#include "wavebound/verify.hpp"

namespace wavebound::cli {
namespace {

using nlohmann::json;

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json bound_json(const BoundReport& b) {
  return json{
      {"tau0", b.tau0},
      {"tauF", b.tauF},
      {"branch", std::string(to_string(b.branch))},
      {"z_value", b.z_value},
      {"scaling_bound", b.scaling_bound},
      {"t_star", b.t_star},
      {"c_Z", b.c_Z},
      {"exponent", b.exponent},
      {"regime",
       {{"gamma_t_star", b.regime.gamma_t_star},
        {"limit", b.regime.limit},
        {"dropped_ratio", b.regime.dropped_ratio},
        {"ok", b.regime.ok}}},
  };
}

json budget_json(const ErrorBudget& b) {
  return json{
      {"aliasing", b.aliasing},
      {"noise", b.noise},
      {"wrap", b.wrap},
      {"total_plain", b.total_plain},
      {"total_modulo", b.total_modulo},
      {"ci_halfwidth", b.ci_halfwidth},
      {"points", b.points},
      {"wrap_events", b.wrap_events},
      {"steps", b.steps},
      {"truncation_scale", b.truncation_scale},
  };
}

json simulation_json(const SimulationReport& r) {
  return json{
      {"seed", r.seed},
      {"trials", r.trials},
      {"period", r.period},
      {"noise_std", r.noise_std},
      {"pulses", r.pulses},
      {"budget", budget_json(r.budget)},
      {"decomposition_residual", r.decomposition_residual},
      {"decomposition_ci", r.decomposition_ci},
      {"aliasing_ci", r.aliasing_ci},
      {"predicted_total", r.predicted_total},
      {"aliasing_approx", r.aliasing_approx},
      {"aliasing_exact", optional_json(r.aliasing_exact)},
      {"lower_bound", optional_json(r.lower_bound)},
      {"achievable", r.achievable},
      {"gamma_t_over_pi", r.gamma_t_over_pi},
      {"under_resolved", r.under_resolved},
      {"wrap",
       {{"events", r.wrap.events},
        {"steps", r.wrap.steps},
        {"rate", r.wrap.rate},
        {"p_err_bound", r.wrap.p_err_bound},
        {"wrap_bound", r.wrap.wrap_bound}}},
  };
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Nested reports become two-column key,value rows.
void write_flat_csv(std::ostream& os, const json& j) {
  os << "key,value\n";
  for (const auto& [k, v] : j.flatten().items()) os << k << ',' << csv_cell(v) << '\n';
}

std::vector<double> parse_flux_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed flux value '" + tok + "'");
    }
    if (used != tok.size()) throw DomainError("malformed flux value '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

int default_jobs() {
  if (const char* env = std::getenv("WAVEBOUND_JOBS")) {
    try {
      std::size_t used = 0;
      int v = std::stoi(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("WAVEBOUND_JOBS must be a positive integer, got '") + env + "'");
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SimulationConfig simulation_config(const RunConfig& cfg, double flux) {
  SimulationConfig sc;
  sc.spec = PowerLawSpectrum(cfg.p, cfg.kappa, cfg.gamma);
  sc.flux = flux;
  sc.period = cfg.period;
  sc.trials = cfg.trials;
  sc.seed = cfg.seed;
  sc.mode = cfg.mode;
  sc.interpolation.truncation = cfg.truncation;
  sc.interpolation.taper = cfg.taper;
  sc.oversample = cfg.oversample;
  sc.intervals = cfg.intervals;
  sc.pulses = cfg.pulses;
  sc.jobs = cfg.jobs;
  return sc;
}

double simulated_mse(const RunConfig& cfg, const SimulationReport& r) {
  return cfg.mode == Mode::periodic ? r.budget.total_modulo : r.budget.total_plain;
}

void cmd_bound(const RunConfig& cfg, std::ostream& os) {
  PowerLawSpectrum spec(cfg.p, cfg.kappa, cfg.gamma);
  BoundReport b = waveform_lower_bound(spec, cfg.flux);
  json j{{"config", to_json(cfg)}, {"bound", bound_json(b)}};
  if (cfg.output_format == "csv") {
    write_flat_csv(os, j);
  } else {
    os << j.dump(2) << '\n';
  }
}

void cmd_simulate(const RunConfig& cfg, std::ostream& os) {
  SimulationReport r = run_simulation(simulation_config(cfg, cfg.flux));
  json j{{"config", to_json(cfg)}, {"simulation", simulation_json(r)}};
  if (cfg.output_format == "csv") {
    write_flat_csv(os, j);
  } else {
    os << j.dump(2) << '\n';
  }
}

void cmd_sweep(const RunConfig& cfg, std::ostream& os) {
  if (cfg.fluxes.size() < 2) throw DomainError("sweep needs at least two flux values");
  for (double f : cfg.fluxes) {
    if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("flux values must be positive");
  }
  PowerLawSpectrum spec(cfg.p, cfg.kappa, cfg.gamma);

  struct Row {
    double flux, lower, predicted, mse, ci;
  };
  std::vector<Row> rows;
  for (double f : cfg.fluxes) {
    BoundReport b = waveform_lower_bound(spec, f);
    SimulationReport r = run_simulation(simulation_config(cfg, f));
    rows.push_back({f, b.scaling_bound, r.predicted_total, simulated_mse(cfg, r), r.budget.ci_halfwidth});
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const Row& row : rows) {
    double x = std::log(row.flux), y = std::log(row.mse);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  const double denom = n * sxx - sx * sx;
  if (!(denom > 0.0)) throw DomainError("flux values must not all be equal");
  const double slope = (n * sxy - sx * sy) / denom;

  if (cfg.output_format == "json") {
    json arr = json::array();
    for (const Row& row : rows) {
      arr.push_back({{"flux", row.flux},
                     {"lower_bound", row.lower},
                     {"predicted_total", row.predicted},
                     {"simulated_mse", row.mse},
                     {"ci", row.ci}});
    }
    json j{{"config", to_json(cfg)}, {"rows", arr}, {"slope", slope}, {"expected_slope", -scaling_exponent(cfg.p)}};
    os << j.dump(2) << '\n';
    return;
  }
  os << "flux,lower_bound,predicted_total,simulated_mse,ci\n";
  for (const Row& row : rows) {
    os << format_number(row.flux) << ',' << format_number(row.lower) << ',' << format_number(row.predicted) << ','
       << format_number(row.mse) << ',' << format_number(row.ci) << '\n';
  }
  os << "slope,,," << format_number(slope) << ",\n";
}

int cmd_verify(const RunConfig& cfg, std::ostream& os) {
  std::vector<VerificationResult> results = run_verification_suite(cfg.only);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;

  if (cfg.output_format == "csv") {
    os << "name,computed,reference,tolerance,passed\n";
    for (const auto& r : results) {
      os << r.name << ',' << format_number(r.computed) << ',' << format_number(r.reference) << ','
         << format_number(r.tolerance) << ',' << (r.passed ? "true" : "false") << '\n';
    }
  } else if (cfg.output_format == "table") {
    std::size_t width = 4;
    for (const auto& r : results) width = std::max(width, r.name.size());
    os << std::left << std::setw(static_cast<int>(width)) << "name" << "  " << std::setw(24) << "computed"
       << std::setw(24) << "reference" << std::setw(12) << "tolerance" << "result\n";
    for (const auto& r : results) {
      os << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::setw(24)
         << format_number(r.computed) << std::setw(24) << format_number(r.reference) << std::setw(12)
         << format_number(r.tolerance) << (r.passed ? "PASS" : "FAIL") << '\n';
    }
  } else {
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back({{"name", r.name},
                     {"computed", r.computed},
                     {"reference", r.reference},
                     {"tolerance", r.tolerance},
                     {"relative", r.relative},
                     {"passed", r.passed}});
    }
    os << arr.dump(2) << '\n';
  }
  return all ? kOk : kVerifyFailed;
}

int dispatch(const RunConfig& cfg, std::ostream& os) {
  if (cfg.command == "bound") {
    cmd_bound(cfg, os);
    return kOk;
  }
  if (cfg.command == "simulate") {
    cmd_simulate(cfg, os);
    return kOk;
  }
  if (cfg.command == "sweep") {
    cmd_sweep(cfg, os);
    return kOk;
  }
  return cmd_verify(cfg, os);
}

}  // namespace

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw DomainError("config file must hold a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "command") {
      cfg.command = v.get<std::string>();
    } else if (key == "p") {
      cfg.p = v.get<double>();
    } else if (key == "kappa") {
      cfg.kappa = v.get<double>();
    } else if (key == "gamma") {
      cfg.gamma = v.get<double>();
    } else if (key == "flux") {
      cfg.flux = v.get<double>();
    } else if (key == "period") {
      cfg.period = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
    } else if (key == "trials") {
      cfg.trials = v.get<int>();
    } else if (key == "seed") {
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "mode") {
      cfg.mode = parse_mode(v.get<std::string>());
    } else if (key == "truncation") {
      cfg.truncation = v.get<int>();
    } else if (key == "taper") {
      cfg.taper = parse_taper(v.get<std::string>());
    } else if (key == "oversample") {
      cfg.oversample = v.get<int>();
    } else if (key == "intervals") {
      cfg.intervals = v.get<int>();
    } else if (key == "pulses") {
      cfg.pulses = v.is_null() ? std::nullopt : std::optional<std::size_t>(v.get<std::size_t>());
    } else if (key == "fluxes") {
      cfg.fluxes = v.get<std::vector<double>>();
    } else if (key == "only") {
      cfg.only = v.is_null() ? std::nullopt : std::optional<std::string>(v.get<std::string>());
    } else if (key == "output_format") {
      cfg.output_format = v.get<std::string>();
    } else if (key == "output_path") {
      cfg.output_path = v.is_null() ? std::nullopt : std::optional<std::string>(v.get<std::string>());
    } else if (key == "jobs") {
      cfg.jobs = v.get<int>();
    } else {
      throw DomainError("unknown config key '" + key + "'");
    }
  }
}

json to_json(const RunConfig& cfg) {
  json j{
      {"command", cfg.command},
      {"p", cfg.p},
      {"kappa", cfg.kappa},
      {"gamma", cfg.gamma},
      {"output_format", cfg.output_format},
  };
  if (cfg.command == "bound") {
    j["flux"] = cfg.flux;
    return j;
  }
  if (cfg.command == "verify") {
    j["only"] = cfg.only ? json(*cfg.only) : json(nullptr);
    return j;
  }
  if (cfg.command == "sweep") {
    j["fluxes"] = cfg.fluxes;
  } else {
    j["flux"] = cfg.flux;
  }
  j["period"] = optional_json(cfg.period);
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["mode"] = std::string(to_string(cfg.mode));
  j["truncation"] = cfg.truncation;
  j["taper"] = std::string(to_string(cfg.taper));
  j["oversample"] = cfg.oversample;
  j["intervals"] = cfg.intervals;
  j["pulses"] = cfg.pulses ? json(*cfg.pulses) : json(nullptr);
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Waveform phase estimation bounds and simulations", "wavebound"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string mode_text, taper_text, fluxes_text, config_path, format_text, output_path, only;
  double period = 0.0;
  std::size_t pulses = 0;
  std::vector<CLI::Option*> opts;
  auto add = [&](CLI::App* sub, bool sim) {
    sub->add_option("--p", flags.p, "spectral exponent, p > 1");
    sub->add_option("--kappa", flags.kappa, "spectral scale");
    sub->add_option("--gamma", flags.gamma, "low-frequency cutoff");
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--format", format_text, "output format");
    sub->add_option("--output", output_path, "write output to this path");
    if (sim) {
      sub->add_option("--period", period, "pulse period");
      sub->add_option("--trials", flags.trials, "Monte Carlo trials");
      sub->add_option("--seed", flags.seed, "RNG seed");
      sub->add_option("--mode", mode_text, "plain or periodic");
      sub->add_option("--truncation", flags.truncation, "interpolation half-width in samples");
      sub->add_option("--taper", taper_text, "none or tukey");
      sub->add_option("--oversample", flags.oversample, "truth grid points per pulse period");
      sub->add_option("--intervals", flags.intervals, "averaged pulse intervals per trial");
      sub->add_option("--pulses", pulses, "record length in pulses");
      sub->add_option("--jobs", flags.jobs, "worker threads");
    }
  };

  CLI::App* bound = app.add_subcommand("bound", "evaluate the waveform lower bound");
  add(bound, false);
  bound->add_option("--flux", flags.flux, "photon flux");
  CLI::App* simulate = app.add_subcommand("simulate", "run a Monte Carlo error budget");
  add(simulate, true);
  simulate->add_option("--flux", flags.flux, "photon flux");
  CLI::App* sweep = app.add_subcommand("sweep", "simulate a list of fluxes and fit the scaling slope");
  add(sweep, true);
  sweep->add_option("--fluxes", fluxes_text, "comma-separated flux values")->required();
  CLI::App* verify = app.add_subcommand("verify", "run the numerical verification suite");
  add(verify, false);
  verify->add_option("--only", only, "run one named check");

  std::vector<std::string> argv_store{"wavebound"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidArguments;
  }

  CLI::App* sub = app.get_subcommands().front();
  auto given = [&](const char* name) {
    CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };

  RunConfig cfg;
  cfg.command = sub->get_name();
  std::ofstream file_out;
  try {
    bool jobs_set = false;
    bool format_set = false;
    if (given("--config")) {
      std::ifstream in(config_path);
      if (!in) throw DomainError("cannot open config file '" + config_path + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw DomainError("config file is not valid JSON: " + std::string(e.what()));
      }
      try {
        apply_json(cfg, j);
      } catch (const json::exception& e) {
        throw DomainError("bad config value: " + std::string(e.what()));
      }
      jobs_set = j.contains("jobs");
      format_set = j.contains("output_format");
      cfg.command = sub->get_name();
    }
    if (given("--p")) cfg.p = flags.p;
    if (given("--kappa")) cfg.kappa = flags.kappa;
    if (given("--gamma")) cfg.gamma = flags.gamma;
    if (given("--flux")) cfg.flux = flags.flux;
    if (given("--period")) cfg.period = period;
    if (given("--trials")) cfg.trials = flags.trials;
    if (given("--seed")) cfg.seed = flags.seed;
    if (given("--mode")) cfg.mode = parse_mode(mode_text);
    if (given("--truncation")) cfg.truncation = flags.truncation;
    if (given("--taper")) cfg.taper = parse_taper(taper_text);
    if (given("--oversample")) cfg.oversample = flags.oversample;
    if (given("--intervals")) cfg.intervals = flags.intervals;
    if (given("--pulses")) cfg.pulses = pulses;
    if (given("--fluxes")) cfg.fluxes = parse_flux_list(fluxes_text);
    if (given("--only")) cfg.only = only;
    if (given("--output")) cfg.output_path = output_path;
    if (given("--jobs")) {
      cfg.jobs = flags.jobs;
      jobs_set = true;
    }
    if (!jobs_set) cfg.jobs = default_jobs();
    if (cfg.jobs < 1) throw DomainError("jobs must be at least 1");

    if (given("--format")) {
      cfg.output_format = format_text;
    } else if (cfg.command == "sweep" && !format_set) {
      cfg.output_format = "csv";
    }
    const bool table_ok = cfg.command == "verify";
    if (cfg.output_format != "json" && cfg.output_format != "csv" && !(table_ok && cfg.output_format == "table")) {
      throw DomainError("unsupported output format '" + cfg.output_format + "'");
    }

    std::ostream* os = &out;
    if (cfg.output_path) {
      file_out.open(*cfg.output_path);
      if (!file_out) throw DomainError("cannot open output file '" + *cfg.output_path + "'");
      os = &file_out;
    }
    return dispatch(cfg, *os);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const RegimeError& e) {
    err << "regime violation: " << e.what() << '\n';
    return kRegimeViolation;
  } catch (const InsufficientDataError& e) {
    err << "insufficient data: " << e.what() << '\n';
    return kInsufficientData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
}

}  // namespace wavebound::cli
