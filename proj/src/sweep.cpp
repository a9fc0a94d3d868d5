#include "secnet/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "json.hpp"

namespace secnet {

namespace {

using nlohmann::json;

Scenario with_value(Scenario s, SweepVariable v, double x) {
  switch (v) {
    case SweepVariable::lambda_int: s.system.lambda_int = x; break;
    case SweepVariable::D: s.system.D = x; break;
    case SweepVariable::beta_eav:
      if (!s.eav) throw ParameterError("beta_eav", "sweep needs eavesdropper parameters");
      s.eav->beta_eav = x;
      break;
    case SweepVariable::lambda_eav:
      if (!s.eav) throw ParameterError("lambda_eav", "sweep needs eavesdropper parameters");
      s.eav->lambda_eav = x;
      break;
    case SweepVariable::epsilon:
      if (!s.secrecy) throw ParameterError("epsilon", "sweep needs a secrecy tolerance");
      s.secrecy->epsilon = x;
      break;
  }
  return s;
}

SweepRecord evaluate(const SweepSpec& spec, double x) {
  SweepRecord row;
  row.swept = x;
  row.scenario = with_value(spec.fixed, spec.variable, x);
  row.mode = spec.mode;
  const Scenario& sc = row.scenario;
  sc.system.validate();
  const bool has_threat = sc.eav && sc.secrecy;
  if (has_threat) {
    sc.eav->validate();
    sc.secrecy->validate();
  }

  const OptimizationOutcome unc = unconstrained_optimum(sc.system);
  row.throughput_unconstrained = unc.throughput;
  if (has_threat) row.d_c = distance_bound_dc(sc.system, *sc.eav, *sc.secrecy);

  OptimizationOutcome chosen = unc;
  if (spec.mode != FeasibilityMode::Unconstrained) {
    if (!has_threat) {
      throw ParameterError("lambda_eav", "secrecy modes need eavesdropper and epsilon values");
    }
    chosen = constrained_optimum(sc.system, *sc.eav, *sc.secrecy, spec.mode);
  }
  row.status = chosen.status;
  row.throughput_constrained = chosen.throughput;
  if (chosen.design) {
    row.beta_star = chosen.design->beta;
    row.d_star = chosen.design->d;
    row.hops = chosen.hops;
    if (sc.eav) row.secrecy_probability_at_dstar = secrecy_probability(sc.system, *sc.eav, chosen.design->d);
    if (spec.validate) row.mc = estimate_p_suc(sc.system, *chosen.design, *spec.validate);
  }
  if (row.status == Status::Infeasible && row.throughput_constrained != 0.0) {
    throw std::logic_error("infeasible row with non-zero throughput");
  }
  return row;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json scenario_json(const Scenario& s) {
  json j;
  j["D"] = s.system.D;
  j["alpha"] = s.system.alpha;
  j["lambda_int"] = s.system.lambda_int;
  j["lambda_eav"] = s.eav ? json(s.eav->lambda_eav) : json(nullptr);
  j["beta_eav"] = s.eav ? json(s.eav->beta_eav) : json(nullptr);
  j["epsilon"] = s.secrecy ? json(s.secrecy->epsilon) : json(nullptr);
  return j;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::lambda_int: return "lambda_int";
    case SweepVariable::beta_eav: return "beta_eav";
    case SweepVariable::epsilon: return "epsilon";
    case SweepVariable::lambda_eav: return "lambda_eav";
    case SweepVariable::D: return "D";
  }
  return "?";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view text) {
  for (auto v : {SweepVariable::lambda_int, SweepVariable::beta_eav, SweepVariable::epsilon,
                 SweepVariable::lambda_eav, SweepVariable::D}) {
    if (text == to_string(v)) return v;
  }
  return std::nullopt;
}

std::vector<double> make_grid(double min, double max, std::size_t points, GridScale scale) {
  if (points == 0) throw ParameterError("grid_points", "must be at least 1");
  if (!(std::isfinite(min) && std::isfinite(max))) throw ParameterError("grid_min", "must be finite");
  if (points == 1) return {min};
  if (!(min < max)) throw ParameterError("grid_max", "must exceed grid_min");
  if (scale == GridScale::log && !(min > 0.0)) {
    throw ParameterError("grid_min", "log grids need a positive lower end");
  }
  std::vector<double> grid(points);
  const double n = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / n;
    grid[i] = scale == GridScale::linear ? min + f * (max - min)
                                         : min * std::pow(max / min, f);
  }
  grid.front() = min;
  grid.back() = max;
  return grid;
}

SweepError::SweepError(std::size_t index, double value, const std::string& what)
    : std::runtime_error("grid point " + std::to_string(index) + " (value " +
                         format_number(value) + "): " + what),
      index_(index) {}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  if (spec.grid.empty()) throw SweepError(0, 0.0, "grid is empty");
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > spec.grid[i - 1])) {
      throw SweepError(i, spec.grid[i], "grid must be strictly increasing");
    }
  }
  if (spec.validate) spec.validate->validate();

  const std::size_t n = spec.grid.size();
  std::vector<SweepRecord> rows(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t i) {
    try {
      rows[i] = evaluate(spec, spec.grid[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) work(i);
      });
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& ex) {
      throw SweepError(i, spec.grid[i], ex.what());
    }
  }
  return rows;
}

std::vector<SweepRecord> run_throughput_sweep(const SweepSpec& spec) {
  if (spec.variable != SweepVariable::lambda_int || spec.mode != FeasibilityMode::Unconstrained) {
    throw std::invalid_argument("throughput sweep runs over lambda_int in unconstrained mode");
  }
  auto rows = run_sweep(spec);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].throughput_unconstrained < rows[i - 1].throughput_unconstrained)) {
      throw SweepError(i, rows[i].swept, "optimal throughput is not decreasing in lambda_int");
    }
  }
  return rows;
}

std::vector<SweepRecord> run_dc_sweep(const SweepSpec& spec) {
  if (spec.variable != SweepVariable::beta_eav) {
    throw std::invalid_argument("d_c sweep runs over beta_eav");
  }
  if (!spec.fixed.eav || !spec.fixed.secrecy) {
    throw ParameterError("lambda_eav", "d_c sweep needs eavesdropper and epsilon values");
  }
  return run_sweep(spec);
}

std::vector<SweepRecord> run_constrained_sweep(const SweepSpec& spec) {
  if (spec.variable != SweepVariable::lambda_int || spec.mode == FeasibilityMode::Unconstrained) {
    throw std::invalid_argument("constrained sweep runs over lambda_int in a secrecy mode");
  }
  return run_sweep(spec);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string spec_to_json(const SweepSpec& spec) {
  json j;
  j["variable"] = to_string(spec.variable);
  j["grid"] = spec.grid;
  j["fixed"] = scenario_json(spec.fixed);
  j["mode"] = to_string(spec.mode);
  if (spec.validate) {
    const auto& c = *spec.validate;
    j["validate"] = {{"trials", c.trials},
                     {"seed", c.seed},
                     {"region_radius", optional_number(c.region_radius)},
                     {"far_field_tolerance", c.far_field_tolerance}};
  } else {
    j["validate"] = nullptr;
  }
  return j.dump();
}

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRecord>& rows) {
  out << "# " << spec_to_json(spec) << '\n';
  out << to_string(spec.variable)
      << ",D,alpha,lambda_int,lambda_eav,beta_eav,epsilon,mode,beta_star,d_star,hops,d_c,status,"
         "throughput_unconstrained,throughput_constrained,mc_estimate,mc_stderr\n";
  for (const auto& r : rows) {
    const Scenario& s = r.scenario;
    out << format_number(r.swept) << ',' << format_number(s.system.D) << ','
        << format_number(s.system.alpha) << ',' << format_number(s.system.lambda_int) << ','
        << (s.eav ? format_number(s.eav->lambda_eav) : "") << ','
        << (s.eav ? format_number(s.eav->beta_eav) : "") << ','
        << (s.secrecy ? format_number(s.secrecy->epsilon) : "") << ',' << to_string(r.mode) << ','
        << cell(r.beta_star) << ',' << cell(r.d_star) << ',' << cell(r.hops) << ','
        << cell(r.d_c) << ',' << to_string(r.status) << ','
        << format_number(r.throughput_unconstrained) << ','
        << format_number(r.throughput_constrained) << ','
        << (r.mc ? format_number(r.mc->mean) : "") << ','
        << (r.mc ? format_number(r.mc->std_error) : "") << '\n';
  }
}

void write_json(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRecord>& rows) {
  json doc;
  doc["spec"] = json::parse(spec_to_json(spec));
  doc["rows"] = json::array();
  for (const auto& r : rows) {
    json j = scenario_json(r.scenario);
    j[std::string(to_string(spec.variable))] = r.swept;
    j["mode"] = to_string(r.mode);
    j["beta_star"] = optional_number(r.beta_star);
    j["d_star"] = optional_number(r.d_star);
    j["hops"] = optional_number(r.hops);
    j["d_c"] = optional_number(r.d_c);
    j["status"] = to_string(r.status);
    j["throughput_unconstrained"] = r.throughput_unconstrained;
    j["throughput_constrained"] = r.throughput_constrained;
    j["secrecy_probability_at_dstar"] = optional_number(r.secrecy_probability_at_dstar);
    j["mc_estimate"] = r.mc ? json(r.mc->mean) : json(nullptr);
    j["mc_stderr"] = r.mc ? json(r.mc->std_error) : json(nullptr);
    doc["rows"].push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace secnet
