#include "secnet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "secnet/model.hpp"
#include "secnet/montecarlo.hpp"
#include "secnet/optimizer.hpp"
#include "secnet/sweep.hpp"

namespace secnet::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every option is optional at parse time; presets fill gaps and each command
// checks what it needs.
struct Options {
  std::string command;
  std::optional<std::string> preset;
  std::optional<double> D, alpha, lambda_int, lambda_eav, beta_eav, epsilon;
  std::optional<std::string> mode;
  std::optional<double> beta, d;
  std::optional<int> h_max;
  std::optional<std::string> sweep_variable;
  std::vector<double> grid;
  std::optional<double> grid_min, grid_max;
  std::optional<std::size_t> grid_points;
  std::optional<std::string> grid_scale;
  std::optional<bool> validate;
  std::optional<std::uint64_t> trials, seed;
  std::optional<unsigned> threads;
  std::optional<std::string> region_radius;
  std::optional<double> far_field_tolerance;
  std::vector<std::string> targets;
  std::vector<double> candidates;
  std::optional<std::string> output, format, dump_config;
};

template <typename T>
void fill(std::optional<T>& slot, T value) {
  if (!slot) slot = std::move(value);
}

void apply_preset(Options& o) {
  if (!o.preset) return;
  const std::string& name = *o.preset;
  fill(o.alpha, 4.0);
  fill(o.D, 3.0);
  fill(o.grid_scale, std::string("log"));
  if (name == "fig2") {
    fill(o.sweep_variable, std::string("lambda_int"));
    fill(o.mode, std::string("unconstrained"));
    // Lower end keeps the stationary hop length below D = 3.
    fill(o.grid_min, 0.02);
    fill(o.grid_max, 2.0);
    fill(o.grid_points, std::size_t{25});
  } else if (name == "fig3") {
    fill(o.sweep_variable, std::string("beta_eav"));
    fill(o.mode, std::string("bounded"));
    fill(o.epsilon, 0.1);
    fill(o.lambda_int, 1.0);
    fill(o.lambda_eav, 0.1);
    fill(o.beta_eav, 1.0);
    fill(o.grid_min, 0.01);
    fill(o.grid_max, 100.0);
    fill(o.grid_points, std::size_t{41});
  } else if (name == "fig4") {
    fill(o.sweep_variable, std::string("lambda_int"));
    fill(o.mode, std::string("bounded"));
    fill(o.epsilon, 0.1);
    fill(o.lambda_eav, 0.1);
    fill(o.beta_eav, 1.0);
    fill(o.lambda_int, 1.0);
    fill(o.grid_min, 0.01);
    fill(o.grid_max, 10.0);
    fill(o.grid_points, std::size_t{61});
  } else {
    throw ParameterError("preset", "unknown preset '" + name + "' (expected fig2, fig3 or fig4)");
  }
}

double need(const std::optional<double>& v, const char* name) {
  if (!v) throw ParameterError(name, "is required but was not given");
  return *v;
}

SystemParams system_params(const Options& o) {
  SystemParams p{need(o.D, "D"), need(o.alpha, "alpha"), need(o.lambda_int, "lambda_int")};
  p.validate();
  return p;
}

bool has_threat(const Options& o) { return o.lambda_eav || o.beta_eav || o.epsilon; }

EavesdropperParams eav_params(const Options& o) {
  EavesdropperParams e{need(o.lambda_eav, "lambda_eav"), need(o.beta_eav, "beta_eav")};
  e.validate();
  return e;
}

SecrecySpec secrecy_spec(const Options& o) {
  SecrecySpec s{need(o.epsilon, "epsilon")};
  s.validate();
  return s;
}

FeasibilityMode resolve_mode(const Options& o) {
  if (!o.mode) return has_threat(o) ? FeasibilityMode::BoundedSecrecy : FeasibilityMode::Unconstrained;
  const auto m = parse_mode(*o.mode);
  if (!m) throw ParameterError("mode", "expected unconstrained, bounded or strict");
  return *m;
}

std::string resolve_format(const Options& o, const char* fallback) {
  const std::string f = o.format.value_or(fallback);
  if (f != "json" && f != "csv") throw ParameterError("format", "expected csv or json");
  return f;
}

MonteCarloConfig mc_config(const Options& o) {
  MonteCarloConfig c;
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  if (o.far_field_tolerance) c.far_field_tolerance = *o.far_field_tolerance;
  if (o.region_radius && *o.region_radius != "auto") {
    try {
      std::size_t used = 0;
      c.region_radius = std::stod(*o.region_radius, &used);
      if (used != o.region_radius->size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParameterError("region_radius", "expected 'auto' or a positive number");
    }
  }
  c.validate();
  return c;
}

json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

json outcome_json(const OptimizationOutcome& r) {
  json j;
  j["status"] = to_string(r.status);
  j["mode"] = to_string(r.mode);
  j["beta_star"] = r.design ? json(r.design->beta) : json(nullptr);
  j["d_star"] = r.design ? json(r.design->d) : json(nullptr);
  j["hops"] = r.design ? json(r.hops) : json(nullptr);
  j["throughput"] = r.throughput;
  j["d_c"] = number_or_null(r.d_c);
  j["constraint_binding"] = r.constraint_binding;
  return j;
}

std::string csv_value(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

// Flat objects only; nested values are emitted as their JSON text.
void write_flat_csv(std::ostream& out, const json& j) {
  bool first = true;
  for (const auto& [k, v] : j.items()) {
    out << (first ? "" : ",") << k;
    first = false;
  }
  out << '\n';
  first = true;
  for (const auto& [k, v] : j.items()) {
    std::string s = csv_value(v);
    if (s.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      s = quoted + '"';
    }
    out << (first ? "" : ",") << s;
    first = false;
  }
  out << '\n';
}

int cmd_optimize(const Options& o, std::ostream& out) {
  const SystemParams p = system_params(o);
  const FeasibilityMode mode = resolve_mode(o);
  const std::string format = resolve_format(o, "json");

  OptimizationOutcome result = mode == FeasibilityMode::Unconstrained
                                   ? unconstrained_optimum(p)
                                   : constrained_optimum(p, eav_params(o), secrecy_spec(o), mode);
  if (mode == FeasibilityMode::Unconstrained && o.lambda_eav && o.beta_eav && o.epsilon) {
    result.d_c = distance_bound_dc(p, eav_params(o), secrecy_spec(o));
  }
  json j = outcome_json(result);
  if (o.h_max) {
    const auto ih = integer_hop_optimum(p, *o.h_max);
    j["integer_hops"] = {{"hops", ih.hops}, {"beta", ih.beta}, {"throughput", ih.throughput}};
  }
  if (format == "json") {
    out << j.dump(2) << '\n';
  } else {
    write_flat_csv(out, j);
  }
  return result.status == Status::Feasible ? kOk : kInfeasible;
}

std::string verdict(double dc, double D) {
  if (std::abs(dc - D) <= 1e-9 * D) return "boundary";
  return dc < D ? "feasible" : "infeasible";
}

int cmd_feasibility(const Options& o, std::ostream& out) {
  const SystemParams p = system_params(o);
  const EavesdropperParams e = eav_params(o);
  const SecrecySpec s = secrecy_spec(o);
  const std::string format = resolve_format(o, "json");

  const double dc = distance_bound_dc(p, e, s);
  const auto unc = unconstrained_optimum(p);
  const double d_star = unc.design->d;

  std::vector<double> cands = o.candidates;
  if (cands.empty()) {
    cands = {d_star, p.D};
    if (dc <= p.D) cands.push_back(dc);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  }

  json j;
  j["D"] = p.D;
  j["d_c"] = dc;
  j["epsilon"] = s.epsilon;
  j["eavesdropper_outage"] = eavesdropper_outage(p, e);
  j["d_star_unconstrained"] = d_star;
  j["candidates"] = json::array();
  for (double d : cands) {
    const double sp = secrecy_probability(p, e, d);
    j["candidates"].push_back(
        {{"d", d}, {"secrecy_probability", sp}, {"meets_secrecy", sp >= 1.0 - s.epsilon}});
  }
  const std::string v = verdict(dc, p.D);
  const bool exists = v != "infeasible";
  j["verdicts"] = {
      {"bounded", {{"verdict", v}, {"achieves_unconstrained", exists && d_star <= dc}}},
      {"strict", {{"verdict", v}, {"achieves_unconstrained", exists && d_star >= dc}}},
  };
  if (format == "json") {
    out << j.dump(2) << '\n';
  } else {
    json flat = j;
    flat.erase("candidates");
    flat.erase("verdicts");
    flat["verdict"] = v;
    write_flat_csv(out, flat);
  }
  return exists ? kOk : kInfeasible;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  SweepSpec spec;
  const auto var = parse_sweep_variable(o.sweep_variable.value_or("lambda_int"));
  if (!var) throw ParameterError("sweep_variable", "expected lambda_int, beta_eav, epsilon, lambda_eav or D");
  spec.variable = *var;
  spec.mode = resolve_mode(o);
  const std::string format = resolve_format(o, "csv");

  if (!o.grid.empty()) {
    spec.grid = o.grid;
  } else {
    const std::string scale = o.grid_scale.value_or("log");
    if (scale != "log" && scale != "linear") throw ParameterError("grid_scale", "expected linear or log");
    spec.grid = make_grid(need(o.grid_min, "grid_min"), need(o.grid_max, "grid_max"),
                          o.grid_points.value_or(25),
                          scale == "log" ? GridScale::log : GridScale::linear);
  }

  // The swept variable may be absent from the fixed set; seed it with the
  // first grid value so validation sees a complete scenario.
  Options fixed = o;
  const double x0 = spec.grid.front();
  switch (spec.variable) {
    case SweepVariable::lambda_int: fill(fixed.lambda_int, x0); break;
    case SweepVariable::D: fill(fixed.D, x0); break;
    case SweepVariable::beta_eav: fill(fixed.beta_eav, x0); break;
    case SweepVariable::lambda_eav: fill(fixed.lambda_eav, x0); break;
    case SweepVariable::epsilon: fill(fixed.epsilon, x0); break;
  }
  spec.fixed.system = system_params(fixed);
  if (has_threat(fixed)) {
    spec.fixed.eav = eav_params(fixed);
    spec.fixed.secrecy = secrecy_spec(fixed);
  }
  if (o.validate.value_or(false)) spec.validate = mc_config(o);
  spec.threads = o.threads.value_or(1);

  std::vector<SweepRecord> rows;
  if (spec.variable == SweepVariable::lambda_int && spec.mode == FeasibilityMode::Unconstrained) {
    rows = run_throughput_sweep(spec);
  } else if (spec.variable == SweepVariable::beta_eav) {
    rows = run_dc_sweep(spec);
  } else if (spec.variable == SweepVariable::lambda_int) {
    rows = run_constrained_sweep(spec);
  } else {
    rows = run_sweep(spec);
  }
  if (format == "csv") {
    write_csv(out, spec, rows);
  } else {
    write_json(out, spec, rows);
  }
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const SystemParams p = system_params(o);
  const MonteCarloConfig cfg = mc_config(o);
  const std::string format = resolve_format(o, "json");

  std::vector<std::string> targets = o.targets;
  if (targets.empty()) {
    targets = {"p_suc"};
    if (o.lambda_eav && o.beta_eav) targets.push_back("eav_outage");
  }

  auto design = [&]() {
    if (o.beta || o.d) {
      LinkDesign des{need(o.beta, "beta"), need(o.d, "d")};
      des.validate(p);
      return des;
    }
    return *unconstrained_optimum(p).design;
  };

  json report;
  report["trials"] = cfg.trials;
  report["seed"] = cfg.seed;
  report["targets"] = json::array();
  bool all_ok = true;
  for (const auto& name : targets) {
    double analytic = 0.0;
    EstimateWithCI est;
    bool asserted = true;
    if (name == "p_suc") {
      const LinkDesign des = design();
      analytic = single_hop_success(p, des);
      est = estimate_p_suc(p, des, cfg);
    } else if (name == "end_to_end") {
      const LinkDesign des = design();
      analytic = end_to_end_success(p, des).value;
      est = estimate_end_to_end(p, des, cfg);
    } else if (name == "eav_outage") {
      const EavesdropperParams e = eav_params(o);
      analytic = eavesdropper_outage(p, e);
      est = estimate_eav_outage(p, e, cfg);
    } else if (name == "any_eav_outage") {
      const EavesdropperParams e = eav_params(o);
      analytic = eavesdropper_outage(p, e);
      est = estimate_any_eav_outage(p, e, cfg);
      asserted = false;
    } else {
      throw ParameterError("targets", "unknown target '" + name +
                                          "' (expected p_suc, end_to_end, eav_outage, any_eav_outage)");
    }
    std::optional<double> z;
    if (est.std_error > 0.0) {
      z = (est.mean - analytic) / est.std_error;
    } else if (est.mean == analytic) {
      z = 0.0;
    }
    const bool within = z && std::abs(*z) <= 3.0;
    if (asserted && !within) all_ok = false;
    report["targets"].push_back({{"target", name},
                                 {"analytic", analytic},
                                 {"estimate", est.mean},
                                 {"stderr", est.std_error},
                                 {"trials", est.trials},
                                 {"z", number_or_null(z)},
                                 {"asserted", asserted},
                                 {"within_3_sigma", within}});
  }
  report["all_within_3_sigma"] = all_ok;

  if (format == "json") {
    out << report.dump(2) << '\n';
  } else {
    out << "target,analytic,estimate,stderr,trials,z,asserted,within_3_sigma\n";
    for (const auto& t : report["targets"]) {
      out << csv_value(t["target"]) << ',' << csv_value(t["analytic"]) << ','
          << csv_value(t["estimate"]) << ',' << csv_value(t["stderr"]) << ','
          << csv_value(t["trials"]) << ',' << csv_value(t["z"]) << ','
          << csv_value(t["asserted"]) << ',' << csv_value(t["within_3_sigma"]) << '\n';
    }
  }
  return all_ok ? kOk : kStatisticalFailure;
}

template <typename T>
void dump_line(std::ostream& os, const char* key, const std::optional<T>& v) {
  if (!v) return;
  if constexpr (std::is_same_v<T, std::string>) {
    os << key << " = \"" << *v << "\"\n";
  } else if constexpr (std::is_same_v<T, double>) {
    os << key << " = " << format_number(*v) << '\n';
  } else if constexpr (std::is_same_v<T, bool>) {
    os << key << " = " << (*v ? "true" : "false") << '\n';
  } else {
    os << key << " = " << *v << '\n';
  }
}

template <typename T>
void dump_list(std::ostream& os, const char* key, const std::vector<T>& v) {
  if (v.empty()) return;
  os << key << " = [";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    if constexpr (std::is_same_v<T, double>) {
      os << format_number(v[i]);
    } else {
      os << '"' << v[i] << '"';
    }
  }
  os << "]\n";
}

// Writes the effective configuration (preset already applied) in the same
// key = value format the --config option reads.
void dump_effective_config(const Options& o, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write configuration to " + path);
  dump_line(f, "D", o.D);
  dump_line(f, "alpha", o.alpha);
  dump_line(f, "lambda_int", o.lambda_int);
  dump_line(f, "lambda_eav", o.lambda_eav);
  dump_line(f, "beta_eav", o.beta_eav);
  dump_line(f, "epsilon", o.epsilon);
  dump_line(f, "mode", o.mode);
  dump_line(f, "beta", o.beta);
  dump_line(f, "d", o.d);
  dump_line(f, "h_max", o.h_max);
  dump_line(f, "sweep_variable", o.sweep_variable);
  dump_list(f, "grid", o.grid);
  dump_line(f, "grid_min", o.grid_min);
  dump_line(f, "grid_max", o.grid_max);
  dump_line(f, "grid_points", o.grid_points);
  dump_line(f, "grid_scale", o.grid_scale);
  dump_line(f, "validate", o.validate);
  dump_line(f, "trials", o.trials);
  dump_line(f, "seed", o.seed);
  dump_line(f, "threads", o.threads);
  dump_line(f, "region_radius", o.region_radius);
  dump_line(f, "far_field_tolerance", o.far_field_tolerance);
  dump_list(f, "targets", o.targets);
  dump_list(f, "candidates", o.candidates);
  dump_line(f, "format", o.format);
  if (!f) throw IoError("failed writing configuration to " + path);
}

void register_options(CLI::App& app, Options& o) {
  app.add_option("command", o.command, "optimize | feasibility | sweep | simulate")
      ->required()
      ->check(CLI::IsMember({"optimize", "feasibility", "sweep", "simulate"}));
  app.set_config("--config", "", "key = value configuration file")->envname(kConfigEnvVar);
  app.add_option("--preset", o.preset, "fig2 | fig3 | fig4 parameter bundle");
  app.add_option("--D", o.D, "aggregator to control-unit distance");
  app.add_option("--alpha", o.alpha, "path-loss exponent (> 2)");
  app.add_option("--lambda_int", o.lambda_int, "interferer density");
  app.add_option("--lambda_eav", o.lambda_eav, "eavesdropper density");
  app.add_option("--beta_eav", o.beta_eav, "eavesdropper SIR threshold");
  app.add_option("--epsilon", o.epsilon, "secrecy tolerance in (0, 1)");
  app.add_option("--mode", o.mode, "unconstrained | bounded | strict");
  app.add_option("--beta", o.beta, "design SIR threshold (simulate)");
  app.add_option("--d", o.d, "design hop length (simulate)");
  app.add_option("--h_max", o.h_max, "also report the best integer hop count up to this value");
  app.add_option("--sweep_variable", o.sweep_variable, "lambda_int | beta_eav | epsilon | lambda_eav | D");
  app.add_option("--grid", o.grid, "explicit grid values")->delimiter(',');
  app.add_option("--grid_min", o.grid_min);
  app.add_option("--grid_max", o.grid_max);
  app.add_option("--grid_points", o.grid_points);
  app.add_option("--grid_scale", o.grid_scale, "linear | log");
  app.add_option("--validate", o.validate, "add Monte Carlo columns to sweeps");
  app.add_option("--trials", o.trials);
  app.add_option("--seed", o.seed);
  app.add_option("--threads", o.threads);
  app.add_option("--region_radius", o.region_radius, "auto or a length");
  app.add_option("--far_field_tolerance", o.far_field_tolerance);
  app.add_option("--targets", o.targets, "p_suc, end_to_end, eav_outage, any_eav_outage")->delimiter(',');
  app.add_option("--candidates", o.candidates, "hop lengths to evaluate (feasibility)")->delimiter(',');
  app.add_option("--output", o.output, "write the result document to this file");
  app.add_option("--format", o.format, "csv | json");
  app.add_option("--dump_config", o.dump_config, "write the effective configuration to this file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hop length and SIR threshold planning for relay chains with eavesdroppers", "secnet"};
  Options o;
  register_options(app, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::FileError& e) {
    err << "secnet: " << e.what() << '\n';
    return kIoError;
  } catch (const CLI::ParseError& e) {
    err << "secnet: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    apply_preset(o);
    if (o.dump_config) dump_effective_config(o, *o.dump_config);

    std::ostringstream buffer;
    int code = kOk;
    if (o.command == "optimize") {
      code = cmd_optimize(o, buffer);
    } else if (o.command == "feasibility") {
      code = cmd_feasibility(o, buffer);
    } else if (o.command == "sweep") {
      code = cmd_sweep(o, buffer);
    } else {
      code = cmd_simulate(o, buffer);
    }

    if (o.output) {
      std::ofstream f(*o.output);
      if (!f) throw IoError("cannot open output file " + *o.output);
      f << buffer.str();
      if (!f) throw IoError("failed writing " + *o.output);
    } else {
      out << buffer.str();
    }
    return code;
  } catch (const IoError& e) {
    err << "secnet: I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const ParameterError& e) {
    err << "secnet: invalid configuration: " << e.what() << '\n';
    return kConfigError;
  } catch (const SweepError& e) {
    err << "secnet: invalid configuration: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    err << "secnet: invalid configuration: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "secnet: invalid configuration: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace secnet::cli
