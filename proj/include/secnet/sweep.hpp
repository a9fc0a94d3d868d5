#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "secnet/model.hpp"
#include "secnet/montecarlo.hpp"
#include "secnet/optimizer.hpp"

namespace secnet {

enum class SweepVariable { lambda_int, beta_eav, epsilon, lambda_eav, D };

std::string_view to_string(SweepVariable v);
std::optional<SweepVariable> parse_sweep_variable(std::string_view text);

enum class GridScale { linear, log };

/// Inclusive grid from `min` to `max`. Log grids are geometric with both
/// endpoints reproduced exactly.
std::vector<double> make_grid(double min, double max, std::size_t points, GridScale scale);

/// Complete parameter set of a scenario. Eavesdropper and secrecy parts are
/// optional for unconstrained work.
struct Scenario {
  SystemParams system;
  std::optional<EavesdropperParams> eav;
  std::optional<SecrecySpec> secrecy;
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::lambda_int;
  std::vector<double> grid;
  Scenario fixed{};
  FeasibilityMode mode = FeasibilityMode::Unconstrained;
  std::optional<MonteCarloConfig> validate;
  unsigned threads = 1;
};

struct SweepRecord {
  double swept = 0.0;
  Scenario scenario{};
  FeasibilityMode mode = FeasibilityMode::Unconstrained;
  std::optional<double> beta_star;  // chosen design under `mode`
  std::optional<double> d_star;
  std::optional<double> hops;
  std::optional<double> d_c;
  Status status = Status::Feasible;
  double throughput_unconstrained = 0.0;
  double throughput_constrained = 0.0;
  std::optional<double> secrecy_probability_at_dstar;
  std::optional<EstimateWithCI> mc;  // single-hop success at the chosen design
};

/// Raised when a grid point violates a model invariant.
class SweepError : public std::runtime_error {
 public:
  SweepError(std::size_t index, double value, const std::string& what);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Generic runner: one record per grid point in grid order.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

/// Optimal unconstrained throughput versus interferer density.
std::vector<SweepRecord> run_throughput_sweep(const SweepSpec& spec);
/// Distance bound d_c versus the eavesdropper SIR threshold.
std::vector<SweepRecord> run_dc_sweep(const SweepSpec& spec);
/// Constrained against unconstrained optimum versus interferer density.
std::vector<SweepRecord> run_constrained_sweep(const SweepSpec& spec);

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double v);

/// Canonical JSON (sorted keys) describing the spec; used as CSV metadata.
std::string spec_to_json(const SweepSpec& spec);

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRecord>& rows);
void write_json(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRecord>& rows);

}  // namespace secnet
