#pragma once

#include <optional>
#include <string_view>

#include "secnet/model.hpp"

namespace secnet {

enum class FeasibilityMode {
  Unconstrained,
  /// Secrecy region d <= d_c <= D; a design exists iff d_c <= D.
  BoundedSecrecy,
  /// Region d in [d_c, D], the literal reading of the secrecy inequality.
  StrictSecrecy,
};

enum class Status { Feasible, Infeasible };

std::string_view to_string(FeasibilityMode mode);
std::string_view to_string(Status status);
/// Accepts "unconstrained", "bounded" / "bounded_secrecy", "strict" / "strict_secrecy".
std::optional<FeasibilityMode> parse_mode(std::string_view text);

struct OptimizationOutcome {
  Status status = Status::Infeasible;
  FeasibilityMode mode = FeasibilityMode::Unconstrained;
  std::optional<LinkDesign> design;  // empty when infeasible
  double hops = 0.0;
  double throughput = 0.0;
  bool constraint_binding = false;
  std::optional<double> d_c;
};

/// Throughput-maximizing SIR threshold; depends on alpha only.
///   beta* = exp(W0(-(alpha/2) e^(-alpha/2)) + alpha/2) - 1
double optimal_beta(double alpha);

/// Throughput-maximizing hop length for a fixed beta (ignores the d <= D cap):
///   1 / (D lambda_int kappa pi beta^(2/alpha)).
double optimal_hop_length(const SystemParams& p, double beta);

/// beta / (1 + beta) - (2 / alpha) ln(1 + beta). Vanishes at the stationary
/// point in beta of the throughput at its d-optimal hop length.
double beta_fixed_point_residual(double beta, double alpha);

/// Best beta for a fixed hop length d: golden section over log(beta) on
/// [1e-6, 1e6] with tolerance 1e-12.
double optimal_beta_at_hop_length(const SystemParams& p, double d);

OptimizationOutcome unconstrained_optimum(const SystemParams& p);

OptimizationOutcome constrained_optimum(const SystemParams& p, const EavesdropperParams& e,
                                        const SecrecySpec& s, FeasibilityMode mode);

/// Compares two closed forms for the optimal throughput: direct evaluation of
/// the throughput at (beta*, d*), and the form
///   ln(1 + beta*) / (e ln2 D lambda_int kappa pi beta*)
/// which carries single powers of D and beta*. Their ratio is
/// D beta*^(2/alpha - 1), so the latter is not the optimum except by accident.
struct ClosedFormComparison {
  double self_consistent;
  double single_power_form;
  double ratio;           // single_power_form / self_consistent
  double predicted_ratio; // D * beta*^(2/alpha - 1)
};
ClosedFormComparison compare_closed_forms(const SystemParams& p);

struct SearchBox {
  double beta_lo, beta_hi;
  double d_lo, d_hi;
};

struct NumericOptimum {
  double beta;
  double d;
  double throughput;
  bool converged;  // simplex diameter fell below 1e-10 within 1e4 iterations
};

/// Closed-form-free maximization of the throughput over a box: multi-start
/// Nelder-Mead in (log beta, log d) plus nested golden section (beta outer,
/// d inner at its clamped stationary point). Returns the best design found.
NumericOptimum numeric_cross_check(const SystemParams& p, const SearchBox& box);

struct IntegerHopOptimum {
  int hops;
  double beta;
  double throughput;
};

/// Best integer hop count in 1..h_max with beta re-optimized per count.
/// Ties go to the smaller hop count.
IntegerHopOptimum integer_hop_optimum(const SystemParams& p, int h_max);

}  // namespace secnet
