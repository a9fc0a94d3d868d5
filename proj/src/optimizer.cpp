#include "secnet/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>
#include <vector>

#include "secnet/search.hpp"
#include "secnet/specfun.hpp"

namespace secnet {

namespace {

constexpr double kBetaLo = 1e-6;
constexpr double kBetaHi = 1e6;
constexpr double kLogBetaTol = 1e-12;

OptimizationOutcome feasible(const SystemParams& p, LinkDesign des, FeasibilityMode mode,
                             bool binding) {
  OptimizationOutcome out;
  out.status = Status::Feasible;
  out.mode = mode;
  out.design = des;
  out.hops = des.hops(p);
  out.throughput = multi_hop_throughput(p, des);
  out.constraint_binding = binding;
  return out;
}

OptimizationOutcome at_fixed_hop_length(const SystemParams& p, double d, FeasibilityMode mode) {
  return feasible(p, {optimal_beta_at_hop_length(p, d), d}, mode, true);
}

}  // namespace

std::string_view to_string(FeasibilityMode mode) {
  switch (mode) {
    case FeasibilityMode::Unconstrained: return "unconstrained";
    case FeasibilityMode::BoundedSecrecy: return "bounded";
    case FeasibilityMode::StrictSecrecy: return "strict";
  }
  return "?";
}

std::string_view to_string(Status status) {
  return status == Status::Feasible ? "feasible" : "infeasible";
}

std::optional<FeasibilityMode> parse_mode(std::string_view text) {
  if (text == "unconstrained") return FeasibilityMode::Unconstrained;
  if (text == "bounded" || text == "bounded_secrecy") return FeasibilityMode::BoundedSecrecy;
  if (text == "strict" || text == "strict_secrecy") return FeasibilityMode::StrictSecrecy;
  return std::nullopt;
}

double optimal_beta(double alpha) {
  kappa(alpha);  // domain check
  const double half = alpha / 2.0;
  return std::expm1(lambert_w0(-half * std::exp(-half)) + half);
}

double optimal_hop_length(const SystemParams& p, double beta) {
  p.validate();
  return 1.0 / (p.D * p.lambda_int * kappa(p.alpha) * std::numbers::pi *
                std::pow(beta, 2.0 / p.alpha));
}

double beta_fixed_point_residual(double beta, double alpha) {
  return beta / (1.0 + beta) - 2.0 / alpha * std::log1p(beta);
}

double optimal_beta_at_hop_length(const SystemParams& p, double d) {
  p.validate();
  LinkDesign{1.0, d}.validate(p);
  // log T = log(rate_bits(beta)) - c beta^(2/alpha) + const, concave in log beta.
  const double c = p.lambda_int * kappa(p.alpha) * std::numbers::pi * p.D * d;
  auto log_objective = [&](double u) {
    const double beta = std::exp(u);
    return std::log(std::log1p(beta)) - c * std::pow(beta, 2.0 / p.alpha);
  };
  const auto best = search::golden_section_maximize(log_objective, std::log(kBetaLo),
                                                    std::log(kBetaHi), kLogBetaTol);
  return std::exp(best.x);
}

OptimizationOutcome unconstrained_optimum(const SystemParams& p) {
  p.validate();
  const double beta = optimal_beta(p.alpha);
  const double d = optimal_hop_length(p, beta);
  if (d > p.D) return at_fixed_hop_length(p, p.D, FeasibilityMode::Unconstrained);
  return feasible(p, {beta, d}, FeasibilityMode::Unconstrained, false);
}

OptimizationOutcome constrained_optimum(const SystemParams& p, const EavesdropperParams& e,
                                        const SecrecySpec& s, FeasibilityMode mode) {
  OptimizationOutcome base = unconstrained_optimum(p);
  if (mode == FeasibilityMode::Unconstrained) return base;

  const double dc = distance_bound_dc(p, e, s);
  if (dc > p.D) {
    OptimizationOutcome out;
    out.status = Status::Infeasible;
    out.mode = mode;
    out.d_c = dc;
    return out;
  }

  const double d_unc = base.design->d;
  OptimizationOutcome out;
  if (mode == FeasibilityMode::BoundedSecrecy) {
    out = d_unc <= dc ? base : at_fixed_hop_length(p, dc, mode);
  } else {
    const double target = std::min(std::max(d_unc, dc), p.D);
    out = target == d_unc ? base : at_fixed_hop_length(p, target, mode);
  }
  out.mode = mode;
  out.d_c = dc;
  return out;
}

ClosedFormComparison compare_closed_forms(const SystemParams& p) {
  p.validate();
  const double beta = optimal_beta(p.alpha);
  const double d = optimal_hop_length(p, beta);
  ClosedFormComparison cmp{};
  // Direct evaluation, without the d <= D cap, so that both forms describe
  // the same stationary point.
  cmp.self_consistent = d / p.D * rate_bits(beta) *
                        std::exp(-p.lambda_int * kappa(p.alpha) * std::numbers::pi * p.D * d *
                                 std::pow(beta, 2.0 / p.alpha));
  cmp.single_power_form = std::log1p(beta) / (std::numbers::e * std::numbers::ln2 * p.D *
                                              p.lambda_int * kappa(p.alpha) * std::numbers::pi *
                                              beta);
  cmp.ratio = cmp.single_power_form / cmp.self_consistent;
  cmp.predicted_ratio = p.D * std::pow(beta, 2.0 / p.alpha - 1.0);
  return cmp;
}

NumericOptimum numeric_cross_check(const SystemParams& p, const SearchBox& box) {
  p.validate();
  if (!(box.beta_lo > 0.0 && box.beta_lo <= box.beta_hi)) {
    throw ParameterError("beta_range", "must be a non-empty positive interval");
  }
  if (!(box.d_lo > 0.0 && box.d_lo <= box.d_hi && box.d_hi <= p.D)) {
    throw ParameterError("d_range", "must be a non-empty interval inside (0, D]");
  }

  const double load_unit = p.lambda_int * kappa(p.alpha) * std::numbers::pi * p.D;
  auto log_throughput = [&](double beta, double d) {
    return std::log(d / p.D) + std::log(rate_bits(beta)) -
           load_unit * d * std::pow(beta, 2.0 / p.alpha);
  };

  using P2 = search::Point<2>;
  const P2 lower{std::log(box.beta_lo), std::log(box.d_lo)};
  const P2 upper{std::log(box.beta_hi), std::log(box.d_hi)};
  auto snap = [&](double u, int k) {
    // exp(log(x)) can leave the box by an ulp.
    const double lo = k == 0 ? box.beta_lo : box.d_lo;
    const double hi = k == 0 ? box.beta_hi : box.d_hi;
    return std::clamp(std::exp(u), lo, hi);
  };

  struct Candidate {
    double beta, d, log_t;
    bool converged;
  };
  std::vector<Candidate> candidates;

  const auto objective = [&](const P2& x) { return -log_throughput(snap(x[0], 0), snap(x[1], 1)); };
  constexpr int kStarts = 4;
  for (int i = 0; i < kStarts; ++i) {
    for (int j = 0; j < kStarts; ++j) {
      const double fi = (i + 0.5) / kStarts, fj = (j + 0.5) / kStarts;
      const P2 start{lower[0] + fi * (upper[0] - lower[0]), lower[1] + fj * (upper[1] - lower[1])};
      const P2 step{0.25 * (upper[0] - lower[0]), 0.25 * (upper[1] - lower[1])};
      const auto r = search::nelder_mead_minimize<2>(objective, start, step, lower, upper);
      candidates.push_back({snap(r.x[0], 0), snap(r.x[1], 1), -r.value, r.converged});
    }
  }

  // Nested route: for fixed beta the best d is the stationary point clamped to the box.
  auto best_d = [&](double beta) {
    return std::clamp(1.0 / (load_unit * std::pow(beta, 2.0 / p.alpha)), box.d_lo, box.d_hi);
  };
  const auto outer = search::golden_section_maximize(
      [&](double u) {
        const double beta = snap(u, 0);
        return log_throughput(beta, best_d(beta));
      },
      lower[0], upper[0], 1e-12);
  const double nested_beta = snap(outer.x, 0);
  candidates.push_back({nested_beta, best_d(nested_beta), outer.value, true});

  const auto best = std::max_element(candidates.begin(), candidates.end(),
                                     [](const Candidate& a, const Candidate& b) {
                                       if (a.log_t != b.log_t) return a.log_t < b.log_t;
                                       return std::tie(b.beta, b.d) < std::tie(a.beta, a.d);
                                     });
  const bool simplex_converged =
      std::all_of(candidates.begin(), candidates.end(), [](const Candidate& c) { return c.converged; });
  return {best->beta, best->d, multi_hop_throughput(p, {best->beta, best->d}), simplex_converged};
}

IntegerHopOptimum integer_hop_optimum(const SystemParams& p, int h_max) {
  p.validate();
  if (h_max < 1) throw ParameterError("h_max", "must be at least 1");
  IntegerHopOptimum best{0, 0.0, -1.0};
  for (int h = 1; h <= h_max; ++h) {
    const double d = p.D / h;
    const double beta = optimal_beta_at_hop_length(p, d);
    const double t = multi_hop_throughput(p, {beta, d});
    if (t > best.throughput) best = {h, beta, t};
  }
  return best;
}

}  // namespace secnet
