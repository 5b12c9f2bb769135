// maxplus: command-line front end.  Every subcommand writes one JSON report
// that embeds the resolved run configuration and the library version.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maxplus/json_io.hpp"
#include "maxplus/version.hpp"

namespace {

using namespace maxplus;
using maxplus::json::Json;

struct RunConfig {
  std::string command;
  std::string backing = "exact";
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string input;
  std::string cjn;
  std::vector<std::string> x0;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> replications;
  std::optional<double> eta;
  std::optional<double> tolerance;
  std::optional<std::size_t> budget;
  std::size_t max_len = 12;
  std::size_t thin = 1;
  std::size_t seeds = 20;
  std::size_t loynes_budget = 10000000;
  double fraction = 0.95;
  std::size_t max_power = 0;
  bool transient = false;
  bool no_strong = false;
  bool strict = false;
  std::string output;
  std::string plot_data;
  bool verbose = false;
};

/// Report body, stderr summary and plot data of one command.
struct Outcome {
  Json result;
  Json config;
  std::string summary;
  std::string csv;
};

template <class F>
Outcome with_backing(const RunConfig& cfg, F&& f) {
  if (cfg.backing == "exact") return f.template operator()<Rational>();
  return f.template operator()<double>();
}

Json base_config(const RunConfig& cfg) {
  Json c;
  c["command"] = cfg.command;
  c["backing"] = cfg.backing;
  if (!cfg.input.empty()) c["input"] = cfg.input;
  if (cfg.seed) c["seed"] = *cfg.seed;
  return c;
}

template <Backing T>
MatrixDistribution<T> load_law(const RunConfig& cfg) {
  return json::distribution_from<T>(json::read_file(cfg.input));
}

/// `[...]` inline or a path to a JSON file holding an array.
template <Backing T>
Vector<T> load_vector(const std::string& text) {
  const Json j = !text.empty() && text.front() == '[' ? json::parse(text, "--x0")
                                                      : json::read_file(text);
  auto x = json::vector_from<T>(j);
  if (!x.is_finite()) throw InputError("initial conditions must be finite: " + text);
  return x;
}

template <Backing T>
std::vector<Vector<T>> load_initial(const RunConfig& cfg, std::size_t dim) {
  std::vector<Vector<T>> out;
  for (const auto& text : cfg.x0) {
    out.push_back(load_vector<T>(text));
    if (out.back().size() != dim) {
      throw InputError("initial condition " + text + " has dimension " +
                       std::to_string(out.back().size()) + ", expected " + std::to_string(dim));
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

// ------------------------------------------------------------------ commands

Outcome cmd_spectral(const RunConfig& cfg) {
  return with_backing(cfg, [&]<Backing T>() {
    const auto a = json::matrix_from<T>(json::read_file(cfg.input));
    if (cfg.transient && !is_exact_v<T>) {
      throw ContractViolation("the transient is only computed in exact backing");
    }
    Outcome out;
    out.config = base_config(cfg);
    out.config["transient"] = cfg.transient;
    if (!is_irreducible(a)) {
      throw InputError("matrix is reducible; spectral analysis needs an irreducible matrix "
                       "(see open-system)");
    }
    const auto summary = classify(a, cfg.transient, cfg.max_power);
    out.result["matrix"] = json::to_json(a);
    out.result["spectral"] = json::to_json(summary);
    out.result["rank_one"] = is_rank_one(a);
    out.result["weak_rank"] = weak_rank(a);
    out.result["diameter"] = json::to_json(proj_diameter(a));
    out.summary = "eigenvalue " + to_string<T>(summary.eigenvalue) +
                  (summary.scs1cyc1 ? ", scs1-cyc1" : ", not scs1-cyc1");
    return out;
  });
}

Outcome cmd_power(const RunConfig& cfg) {
  if (cfg.backing != "exact") {
    throw ContractViolation("power iteration for cyclicity and transient requires exact backing");
  }
  const auto a = json::matrix_from<Rational>(json::read_file(cfg.input));
  Outcome out;
  out.config = base_config(cfg);
  const std::size_t budget = cfg.max_power ? cfg.max_power : default_power_budget(a.dim());
  out.config["max_power"] = budget;
  const auto ct = cyclicity_and_transient(a, budget);
  out.result["eigenvalue"] = json::number_to_json<Rational>(eigenvalue(a));
  out.result["cyclicity"] = ct.cyclicity;
  out.result["transient"] = ct.transient;
  const auto first = first_rank_one_power(a, budget);
  out.result["first_rank_one_power"] = first ? Json(*first) : Json(nullptr);
  out.summary = "d = " + std::to_string(ct.cyclicity) + ", M = " + std::to_string(ct.transient);
  return out;
}

Outcome cmd_simulate(const RunConfig& cfg) {
  return with_backing(cfg, [&]<Backing T>() {
    std::optional<CjnSpec<T>> spec;
    std::optional<CjnLayout> layout;
    const auto law = [&] {
      if (!cfg.cjn.empty()) {
        spec = json::cjn_spec_from<T>(json::read_file(cfg.cjn));
        layout = cjn_layout(*spec);
        return cjn_distribution(*spec);
      }
      return load_law<T>(cfg);
    }();
    if (cfg.x0.size() > 1) throw InputError("simulate takes at most one --x0");
    const auto x0 = cfg.x0.empty() ? Vector<T>::filled(law.dim(), Scalar<T>::unit())
                                   : load_initial<T>(cfg, law.dim()).front();
    const std::size_t horizon = cfg.horizon.value_or(100);
    Outcome out;
    out.config = base_config(cfg);
    if (!cfg.cjn.empty()) out.config["cjn"] = cfg.cjn;
    out.config["horizon"] = horizon;
    out.config["thin"] = cfg.thin;
    const auto record = simulate(law, x0, horizon, *cfg.seed, cfg.thin);
    out.result["trajectory"] = json::to_json(record);
    if (layout) {
      out.result["cjn_layout"] = {{"dim", layout->dim}, {"physical", json::nodes_to_json(layout->physical)}};
      out.result["second_order"] = json::to_json(cjn_second_order(record, *layout));
    }
    std::ostringstream csv;
    csv << "n";
    for (std::size_t i = 0; i < law.dim(); ++i) csv << ",x" << i + 1;
    csv << "\n";
    for (std::size_t t = 0; t < record.times.size(); ++t) {
      csv << record.times[t];
      for (const auto& c : record.states[t]) csv << "," << to_string(c);
      csv << "\n";
    }
    out.csv = csv.str();
    out.summary = "simulated " + std::to_string(horizon) + " steps";
    return out;
  });
}

Outcome cmd_lyapunov(const RunConfig& cfg) {
  return with_backing(cfg, [&]<Backing T>() {
    const auto law = load_law<T>(cfg);
    if (cfg.x0.size() > 1) throw InputError("lyapunov takes at most one --x0");
    std::optional<Vector<T>> x0;
    if (!cfg.x0.empty()) x0 = load_initial<T>(cfg, law.dim()).front();
    const std::size_t horizon = cfg.horizon.value_or(1000);
    const std::size_t reps = cfg.replications.value_or(30);
    Outcome out;
    out.config = base_config(cfg);
    out.config["horizon"] = horizon;
    out.config["replications"] = reps;
    if (x0) out.config["x0"] = json::to_json(*x0);
    const auto est = lyapunov_estimate(law, horizon, reps, *cfg.seed, cfg.threads, x0);
    out.result = json::to_json(est);
    std::ostringstream csv;
    csv << "replication,estimate\n";
    for (std::size_t r = 0; r < est.samples.size(); ++r) csv << r << "," << fmt(est.samples[r]) << "\n";
    out.csv = csv.str();
    out.summary = "lyapunov exponent " + fmt(est.estimate) + " [" + fmt(est.ci_low) + ", " +
                  fmt(est.ci_high) + "]";
    return out;
  });
}

Outcome cmd_couple(const RunConfig& cfg) {
  return with_backing(cfg, [&]<Backing T>() {
    const auto law = load_law<T>(cfg);
    const auto initial = load_initial<T>(cfg, law.dim());
    CouplingOptions opt;
    opt.horizon = cfg.horizon.value_or(1000);
    opt.eta = cfg.eta.value_or(1e-6);
    opt.strong = is_exact_v<T> && !cfg.no_strong;
    const std::size_t reps = cfg.replications.value_or(100);
    Outcome out;
    out.config = base_config(cfg);
    out.config["x0"] = Json::array();
    for (const auto& x : initial) out.config["x0"].push_back(json::to_json(x));
    out.config["horizon"] = opt.horizon;
    out.config["eta"] = opt.eta;
    out.config["strong"] = opt.strong;
    out.config["replications"] = reps;
    const auto report = forward_coupling(law, initial, opt, *cfg.seed, reps, cfg.threads);
    out.result = json::to_json(report);
    std::ostringstream csv;
    csv << "mode,t,fraction\n";
    for (const auto& [t, f] : report.strong_cdf) csv << "strong," << t << "," << fmt(f) << "\n";
    for (const auto& [t, f] : report.eta_cdf) csv << "eta," << t << "," << fmt(f) << "\n";
    out.csv = csv.str();
    out.summary = std::to_string(report.strong_count) + "/" + std::to_string(reps) +
                  " strongly coupled, " + std::to_string(report.eta_count) + "/" +
                  std::to_string(reps) + " eta-coupled";
    return out;
  });
}

Outcome cmd_loynes(const RunConfig& cfg) {
  return with_backing(cfg, [&]<Backing T>() {
    const auto law = load_law<T>(cfg);
    LoynesOptions opt;
    opt.tolerance = cfg.tolerance.value_or(is_exact_v<T> ? 0.0 : 1e-6);
    opt.budget = cfg.budget.value_or(1000000);
    opt.record_trace = !cfg.plot_data.empty();
    Outcome out;
    out.config = base_config(cfg);
    out.config["tolerance"] = opt.tolerance;
    out.config["budget"] = opt.budget;
    out.config["strict"] = cfg.strict;
    const auto res = backward_loynes(law, opt, *cfg.seed);
    if (!res.converged && cfg.strict) {
      throw BudgetExhausted("backward scheme did not reach the tolerance within " +
                            std::to_string(opt.budget) + " steps");
    }
    out.result = json::to_json(res);
    std::ostringstream csv;
    csv << "n,diameter\n";
    for (std::size_t n = 0; n < res.diameter_trace.size(); ++n) {
      csv << n + 1 << "," << fmt(res.diameter_trace[n]) << "\n";
    }
    out.csv = csv.str();
    out.summary = std::string(res.converged ? "converged" : "budget exhausted") + " after " +
                  std::to_string(res.steps) + " steps";
    return out;
  });
}

MatrixDistribution<Rational> exact_law(const RunConfig& cfg) {
  if (cfg.backing == "exact") return load_law<Rational>(cfg);
  return to_exact(load_law<double>(cfg));
}

Outcome cmd_patterns(const RunConfig& cfg) {
  const auto law = exact_law(cfg);
  PatternOptions opt;
  opt.max_len = cfg.max_len;
  opt.budget = cfg.budget.value_or(200000);
  Outcome out;
  out.config = base_config(cfg);
  out.config["max_len"] = opt.max_len;
  out.config["budget"] = opt.budget;
  const auto report = pattern_search(law, opt);
  out.result = json::to_json(report);
  out.summary = report.found ? "rank-1 pattern of length " +
                                   std::to_string(report.pattern->word.size())
                             : std::string("no rank-1 pattern (") + to_string(report.saturation) + ")";
  return out;
}

Outcome cmd_stability(const RunConfig& cfg) {
  return with_backing(cfg, [&]<Backing T>() {
    const auto law = load_law<T>(cfg);
    VerdictOptions opt;
    opt.patterns.max_len = cfg.max_len;
    opt.patterns.budget = cfg.budget.value_or(200000);
    opt.eta = cfg.eta.value_or(1e-6);
    opt.seeds = cfg.seeds;
    opt.backward_budget = cfg.loynes_budget;
    opt.required_fraction = cfg.fraction;
    opt.threads = cfg.threads;
    Outcome out;
    out.config = base_config(cfg);
    out.config["max_len"] = opt.patterns.max_len;
    out.config["budget"] = opt.patterns.budget;
    out.config["eta"] = opt.eta;
    out.config["seeds"] = opt.seeds;
    out.config["loynes_budget"] = opt.backward_budget;
    out.config["required_fraction"] = opt.required_fraction;
    const auto v = stability_verdict(law, opt, *cfg.seed);
    out.result = json::to_json(v);
    if (v.weak) {
      std::ostringstream csv;
      csv << "seed,steps,diameter\n";
      for (std::size_t s = 0; s < v.weak->steps.size(); ++s) {
        csv << s << "," << v.weak->steps[s] << "," << fmt(v.weak->final_diameters[s]) << "\n";
      }
      out.csv = csv.str();
    }
    out.summary = std::string(to_string(v.verdict)) + " (" + v.basis + ")";
    return out;
  });
}

Outcome cmd_conditions(const RunConfig& cfg) {
  return with_backing(cfg, [&]<Backing T>() {
    const auto law = load_law<T>(cfg);
    Outcome out;
    out.config = base_config(cfg);
    const std::size_t budget = cfg.budget.value_or(1000000);
    out.config["budget"] = budget;
    const auto c = structural_conditions(law, budget);
    out.result = json::to_json(c);
    out.summary = std::string("condition I ") + (c.condition_one ? "holds" : "fails") +
                  ", condition II " + (c.condition_two ? "holds" : "fails");
    return out;
  });
}

Outcome cmd_open_system(const RunConfig& cfg) {
  return with_backing(cfg, [&]<Backing T>() {
    const auto law = load_law<T>(cfg);
    const std::size_t horizon = cfg.horizon.value_or(10000);
    const std::size_t reps = cfg.replications.value_or(30);
    Outcome out;
    out.config = base_config(cfg);
    out.config["horizon"] = horizon;
    out.config["replications"] = reps;
    const auto report = open_system_analysis(law, horizon, reps, *cfg.seed, cfg.threads);
    out.result = json::to_json(report);
    std::ostringstream csv;
    csv << "node,limit,measured\n";
    for (std::size_t i = 0; i < report.node_limits.size(); ++i) {
      csv << i + 1 << "," << fmt(report.node_limits[i]) << "," << fmt(report.measured[i]) << "\n";
    }
    out.csv = csv.str();
    out.summary = report.two_block ? report.two_block->verdict : std::string("node limits computed");
    return out;
  });
}

Outcome cmd_model_cjn(const RunConfig& cfg) {
  return with_backing(cfg, [&]<Backing T>() {
    const auto spec = json::cjn_spec_from<T>(json::read_file(cfg.input));
    const auto layout = cjn_layout(spec);
    const auto law = cjn_distribution(spec);
    Outcome out;
    out.config = base_config(cfg);
    out.result["distribution"] = json::to_json(law);
    out.result["layout"] = {{"dim", layout.dim}, {"physical", json::nodes_to_json(layout.physical)}};
    if (!spec.atoms.empty() && spec.customers == spec.k) {
      out.result["stability_condition"] = json::to_json(cjn_stability_condition(spec.atoms));
    }
    out.summary = "cjn distribution of dimension " + std::to_string(law.dim());
    return out;
  });
}

Outcome cmd_model_taskgraph(const RunConfig& cfg) {
  return with_backing(cfg, [&]<Backing T>() {
    const auto spec = json::taskgraph_spec_from<T>(json::read_file(cfg.input));
    const auto law = taskgraph_distribution(spec);
    Outcome out;
    out.config = base_config(cfg);
    out.result["distribution"] = json::to_json(law);
    out.summary = "task graph distribution of dimension " + std::to_string(law.dim());
    return out;
  });
}

// ------------------------------------------------------------------ output

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Json error_object(const char* kind, const std::string& message) {
  Json e;
  e["error"] = {{"kind", kind}, {"message", message}};
  e["version"] = maxplus::version;
  return e;
}

int emit_error(const RunConfig& cfg, int code, const char* kind, const std::string& message) {
  const std::string text = error_object(kind, message).dump(2) + "\n";
  if (!cfg.output.empty()) {
    try {
      write_text(cfg.output, text);
    } catch (const std::exception&) {
    }
  }
  std::cout << text;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-plus linear systems toolkit"};
  app.set_version_flag("--version", std::string(maxplus::version));
  app.require_subcommand(1);

  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--backing", cfg.backing, "Numeric backing")
        ->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("-o,--output", cfg.output, "Report path (stdout if absent)");
    sub->add_flag("-v,--verbose", cfg.verbose, "One-line summary on stderr");
  };
  auto input = [&](CLI::App* sub, const char* what) {
    sub->add_option("-i,--input,--dist", cfg.input, what)->required();
  };
  auto stochastic = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Master seed")->required();
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--plot-data", cfg.plot_data, "CSV side file");
  };

  std::function<Outcome(const RunConfig&)> handler;
  auto bind = [&](CLI::App* sub, Outcome (*fn)(const RunConfig&)) {
    sub->callback([&, sub, fn] {
      cfg.command = sub->get_name();
      if (sub->get_parent() != &app) cfg.command = sub->get_parent()->get_name() + " " + cfg.command;
      handler = fn;
    });
  };

  auto* spectral = app.add_subcommand("spectral", "Classify an irreducible matrix");
  common(spectral);
  input(spectral, "Matrix file");
  spectral->add_flag("--transient", cfg.transient, "Also compute the transient (exact backing)");
  spectral->add_option("--max-power", cfg.max_power, "Power budget for the transient");
  bind(spectral, cmd_spectral);

  auto* power = app.add_subcommand("power", "Cyclicity and transient by exact power iteration");
  common(power);
  input(power, "Matrix file");
  power->add_option("--max-power", cfg.max_power, "Power budget (default 10k^2 + 64)");
  bind(power, cmd_power);

  auto* sim = app.add_subcommand("simulate", "Simulate one trajectory");
  common(sim);
  stochastic(sim);
  auto* sim_dist = sim->add_option("-i,--input,--dist", cfg.input, "Distribution file");
  auto* sim_cjn = sim->add_option("--cjn", cfg.cjn, "CJN spec (adds idle times and workloads)");
  sim_dist->excludes(sim_cjn);
  sim->add_option("--x0", cfg.x0, "Initial condition: inline array or file")->allow_extra_args(false);
  sim->add_option("--horizon", cfg.horizon, "Number of steps (default 100)");
  sim->add_option("--thin", cfg.thin, "Keep every thin-th state")->check(CLI::PositiveNumber);
  bind(sim, cmd_simulate);

  auto* lyap = app.add_subcommand("lyapunov", "Estimate the Lyapunov exponent");
  common(lyap);
  stochastic(lyap);
  input(lyap, "Distribution file");
  lyap->add_option("--x0", cfg.x0, "Initial condition")->allow_extra_args(false);
  lyap->add_option("--horizon", cfg.horizon, "Horizon (default 1000)");
  lyap->add_option("--replications", cfg.replications, "Replications (default 30)");
  bind(lyap, cmd_lyapunov);

  auto* couple = app.add_subcommand("couple", "Forward coupling from several initial conditions");
  common(couple);
  stochastic(couple);
  input(couple, "Distribution file");
  couple->add_option("--x0", cfg.x0, "Initial condition (repeat, at least two)")->required()->allow_extra_args(false);
  couple->add_option("--horizon", cfg.horizon, "Horizon (default 1000)");
  couple->add_option("--eta", cfg.eta, "Threshold for eta-coupling (default 1e-6)");
  couple->add_option("--replications", cfg.replications, "Replications (default 100)");
  couple->add_flag("--no-strong", cfg.no_strong, "Skip exact coupling detection");
  bind(couple, cmd_couple);

  auto* loynes = app.add_subcommand("loynes", "Backward (Loynes) scheme");
  common(loynes);
  stochastic(loynes);
  input(loynes, "Distribution file");
  loynes->add_option("--tolerance", cfg.tolerance, "Diameter target (0 = exact rank-1)");
  loynes->add_option("--budget", cfg.budget, "Maximum steps (default 1e6)");
  loynes->add_flag("--strict", cfg.strict, "Fail with exit code 4 when the budget runs out");
  bind(loynes, cmd_loynes);

  auto* patterns = app.add_subcommand("patterns", "Search for rank-1 patterns");
  common(patterns);
  input(patterns, "Distribution file");
  patterns->add_option("--max-len", cfg.max_len, "Longest word");
  patterns->add_option("--budget", cfg.budget, "Distinct classes to visit (default 200000)");
  bind(patterns, cmd_patterns);

  auto* stab = app.add_subcommand("stability", "Stability verdict");
  common(stab);
  stochastic(stab);
  input(stab, "Distribution file");
  stab->add_option("--max-len", cfg.max_len, "Longest word for the pattern search");
  stab->add_option("--budget", cfg.budget, "Pattern search budget (default 200000)");
  stab->add_option("--eta", cfg.eta, "Diameter threshold for weak evidence (default 1e-6)");
  stab->add_option("--seeds", cfg.seeds, "Monte Carlo seeds");
  stab->add_option("--loynes-budget", cfg.loynes_budget, "Backward steps per seed");
  stab->add_option("--fraction", cfg.fraction, "Fraction of seeds that must reach eta");
  bind(stab, cmd_stability);

  auto* cond = app.add_subcommand("conditions", "Check conditions I and II");
  common(cond);
  input(cond, "Distribution file");
  cond->add_option("--budget", cfg.budget, "Boolean patterns to visit (default 1e6)");
  bind(cond, cmd_conditions);

  auto* open = app.add_subcommand("open-system", "First-order limits of a reducible model");
  common(open);
  stochastic(open);
  input(open, "Distribution file");
  open->add_option("--horizon", cfg.horizon, "Horizon (default 10000)");
  open->add_option("--replications", cfg.replications, "Replications (default 30)");
  bind(open, cmd_open_system);

  auto* model = app.add_subcommand("model", "Build a distribution from a model description");
  model->require_subcommand(1);
  auto* cjn = model->add_subcommand("cjn", "Cyclic Jackson network");
  common(cjn);
  input(cjn, "CJN spec");
  bind(cjn, cmd_model_cjn);
  auto* tg = model->add_subcommand("taskgraph", "Task graph with random precedences");
  common(tg);
  input(tg, "Task graph spec");
  bind(tg, cmd_model_taskgraph);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error(cfg, 2, "usage_error", e.what());
  }

  try {
    if (cfg.command == "simulate" && cfg.input.empty() && cfg.cjn.empty()) {
      throw InputError("simulate needs --dist or --cjn");
    }
    Outcome outcome = handler(cfg);
    Json report;
    report["tool"] = "maxplus";
    report["version"] = maxplus::version;
    report["config"] = std::move(outcome.config);
    report["config"]["threads"] = cfg.threads;
    report["result"] = std::move(outcome.result);
    // `model` reports double as distribution files.
    if (report["result"].contains("distribution")) {
      report["distribution"] = report["result"]["distribution"];
      report["result"].erase("distribution");
    }
    const std::string text = report.dump(2) + "\n";
    if (cfg.output.empty()) {
      std::cout << text;
    } else {
      write_text(cfg.output, text);
    }
    if (!cfg.plot_data.empty()) write_text(cfg.plot_data, outcome.csv);
    if (cfg.verbose) std::cerr << cfg.command << ": " << outcome.summary << "\n";
    return 0;
  } catch (const InputError& e) {
    return emit_error(cfg, 2, "input_error", e.what());
  } catch (const nlohmann::json::exception& e) {
    return emit_error(cfg, 2, "input_error", e.what());
  } catch (const ContractViolation& e) {
    return emit_error(cfg, 3, "contract_violation", e.what());
  } catch (const BudgetExhausted& e) {
    return emit_error(cfg, 4, "budget_exhausted", e.what());
  } catch (const std::exception& e) {
    return emit_error(cfg, 3, "contract_violation", e.what());
  }
}
