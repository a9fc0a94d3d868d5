#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "secnet/optimizer.hpp"

using namespace secnet;

namespace {
const SystemParams kBase{3.0, 4.0, 0.1};
const SystemParams kDense{3.0, 4.0, 1.0};
const EavesdropperParams kEav{0.1, 1.0};
const SecrecySpec kTenPercent{0.1};

// Stationary point of the throughput in beta by bisection of the fixed point
// beta / (1 + beta) = (2 / alpha) ln(1 + beta), away from the trivial root.
double fixed_point_beta(double alpha) {
  return oracle::bisect(
      [alpha](double b) { return b / (1.0 + b) - 2.0 / alpha * std::log1p(b); }, 1e-6, 1e4);
}

// Dense 1D search over log beta at a fixed hop length.
double brute_force_beta(const SystemParams& p, double d) {
  double best = 0.0, best_t = -1.0;
  for (int i = 0; i <= 200000; ++i) {
    const double b = std::exp(std::log(1e-3) + i * (std::log(1e4) - std::log(1e-3)) / 200000);
    const double t = oracle::throughput(p.D, p.alpha, p.lambda_int, b, d);
    if (t > best_t) {
      best_t = t;
      best = b;
    }
  }
  return best;
}
}  // namespace

TEST_CASE("optimal beta agrees with the fixed-point oracle") {
  CHECK(optimal_beta(4.0) == doctest::Approx(3.92155363456751).epsilon(1e-12));
  CHECK(optimal_beta(3.0) == doctest::Approx(1.39699882630078).epsilon(1e-12));
  for (double alpha : {2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 8.0}) {
    CAPTURE(alpha);
    const double b = optimal_beta(alpha);
    CHECK(std::abs(beta_fixed_point_residual(b, alpha)) < 1e-10);
    CHECK(b == doctest::Approx(fixed_point_beta(alpha)).epsilon(1e-10));
  }
}

TEST_CASE("optimal beta near alpha = 2") {
  const double b = optimal_beta(2.0 + 1e-6);
  CHECK(b >= 0.0);
  CHECK(b < 1e-4);
  CHECK_THROWS_AS(optimal_beta(2.0), std::domain_error);
}

TEST_CASE("beta_fixed_point_residual") {
  CHECK(beta_fixed_point_residual(1.0, 4.0) == doctest::Approx(0.153426409720027).epsilon(1e-13));
  CHECK(std::abs(beta_fixed_point_residual(1e-9, 4.0)) < 1e-9);
  CHECK(beta_fixed_point_residual(1e-3, 4.0) > 0.0);
}

TEST_CASE("unconstrained optimum at alpha=4, D=3, lambda_int=0.1") {
  const auto r = unconstrained_optimum(kBase);
  REQUIRE(r.status == Status::Feasible);
  REQUIRE(r.design);
  CHECK(r.design->beta == doctest::Approx(3.92155363456751).epsilon(1e-12));
  CHECK(r.design->d == doctest::Approx(0.341098583560993).epsilon(1e-12));
  CHECK(r.hops == doctest::Approx(8.79511128038313).epsilon(1e-12));
  CHECK(r.throughput == doctest::Approx(0.0961666861537081).epsilon(1e-12));
  CHECK_FALSE(r.constraint_binding);
  CHECK(r.mode == FeasibilityMode::Unconstrained);
}

TEST_CASE("unconstrained optimum leaves end-to-end success at 1/e") {
  for (const SystemParams& p : {kBase, kDense, SystemParams{10.0, 3.0, 0.05}, SystemParams{1.0, 6.0, 2.0}}) {
    const auto r = unconstrained_optimum(p);
    REQUIRE_FALSE(r.constraint_binding);
    CHECK(std::abs(end_to_end_success(p, *r.design).value - std::exp(-1.0)) < 1e-12);
  }
}

TEST_CASE("unconstrained optimum dominates a log grid") {
  for (const SystemParams& p : {kBase, SystemParams{7.0, 3.0, 0.02}}) {
    const double best = unconstrained_optimum(p).throughput;
    const auto g = oracle::grid_search(
        [&](double b, double d) { return oracle::throughput(p.D, p.alpha, p.lambda_int, b, d); },
        1e-3, 1e3, 1e-4 * p.D, p.D, 400);
    CHECK(g.value <= best * (1.0 + 1e-9));
    CHECK(g.value >= best * 0.99);
  }
}

TEST_CASE("single hop clamp when the stationary hop length exceeds D") {
  const SystemParams p{1.0, 4.0, 0.01};
  REQUIRE(optimal_hop_length(p, optimal_beta(4.0)) > p.D);
  const auto r = unconstrained_optimum(p);
  REQUIRE(r.design);
  CHECK(r.design->d == p.D);
  CHECK(r.hops == 1.0);
  CHECK(r.constraint_binding);
  CHECK(r.design->beta == doctest::Approx(brute_force_beta(p, p.D)).epsilon(1e-3));
  const auto n = numeric_cross_check(p, {1e-3, 1e3, 1e-4, 1.0});
  CHECK(r.throughput == doctest::Approx(n.throughput).epsilon(1e-9));
}

TEST_CASE("optimal throughput scale law") {
  const double ref = unconstrained_optimum(kBase).throughput * 9.0 * 0.1;
  for (double l : {0.01, 0.05, 0.2, 0.4, 1.0}) {
    for (double D : {1.0, 3.0, 10.0}) {
      const SystemParams p{D, 4.0, l};
      if (optimal_hop_length(p, optimal_beta(4.0)) > D) continue;
      CHECK(unconstrained_optimum(p).throughput * D * D * l == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("closed form comparison") {
  const auto c = compare_closed_forms(kBase);
  CHECK(c.self_consistent == doctest::Approx(0.0961666861537081).epsilon(1e-12));
  CHECK(c.single_power_form == doctest::Approx(0.145685666749209).epsilon(1e-12));
  CHECK(c.ratio == doctest::Approx(1.51492863668352).epsilon(1e-12));
  CHECK(c.ratio == doctest::Approx(c.predicted_ratio).epsilon(1e-12));
}

TEST_CASE("constrained optimum, bounded semantics") {
  const auto feasible = constrained_optimum(kDense, kEav, kTenPercent, FeasibilityMode::BoundedSecrecy);
  REQUIRE(feasible.status == Status::Feasible);
  REQUIRE(feasible.d_c);
  CHECK(*feasible.d_c == doctest::Approx(1.75732767136205).epsilon(1e-12));
  CHECK(feasible.design->d == doctest::Approx(0.0341098583560993).epsilon(1e-12));
  CHECK(feasible.throughput == doctest::Approx(0.00961666861537081).epsilon(1e-12));
  CHECK_FALSE(feasible.constraint_binding);
  CHECK(feasible.mode == FeasibilityMode::BoundedSecrecy);

  const auto infeasible = constrained_optimum(kBase, kEav, kTenPercent, FeasibilityMode::BoundedSecrecy);
  CHECK(infeasible.status == Status::Infeasible);
  CHECK(infeasible.throughput == 0.0);
  CHECK_FALSE(infeasible.design);
  CHECK(*infeasible.d_c == doctest::Approx(14.0270668949599).epsilon(1e-12));
}

TEST_CASE("constrained optimum, bounded semantics with a binding bound") {
  // d* > d_c: a small epsilon pulls d_c below the stationary hop length.
  const SystemParams p{1.0, 4.0, 1.0};
  const SecrecySpec tight{0.99};
  const double dc = distance_bound_dc(p, kEav, tight);
  const double d_star = unconstrained_optimum(p).design->d;
  REQUIRE(dc < d_star);
  const auto r = constrained_optimum(p, kEav, tight, FeasibilityMode::BoundedSecrecy);
  REQUIRE(r.status == Status::Feasible);
  CHECK(r.constraint_binding);
  CHECK(r.design->d == dc);
  CHECK(r.design->beta == doctest::Approx(brute_force_beta(p, dc)).epsilon(1e-3));
  CHECK(r.throughput < unconstrained_optimum(p).throughput);
}

TEST_CASE("constrained optimum, strict semantics") {
  const auto r = constrained_optimum(kDense, kEav, kTenPercent, FeasibilityMode::StrictSecrecy);
  REQUIRE(r.status == Status::Feasible);
  CHECK(r.constraint_binding);
  CHECK(r.design->d == doctest::Approx(1.75732767136205).epsilon(1e-12));
  CHECK(r.design->beta == doctest::Approx(brute_force_beta(kDense, r.design->d)).epsilon(1e-3));
  CHECK(secrecy_probability(kDense, kEav, r.design->d) == doctest::Approx(0.9).epsilon(1e-12));
  const auto n = numeric_cross_check(kDense, {1e-3, 1e3, *r.d_c, kDense.D});
  CHECK(r.throughput == doctest::Approx(n.throughput).epsilon(1e-3));
  CHECK(r.throughput >= n.throughput * (1.0 - 1e-9));

  const auto none = constrained_optimum(kBase, kEav, kTenPercent, FeasibilityMode::StrictSecrecy);
  CHECK(none.status == Status::Infeasible);
  CHECK(none.throughput == 0.0);
}

TEST_CASE("modes agree when d* sits exactly on d_c") {
  const auto unc = unconstrained_optimum(kDense);
  const double d_star = unc.design->d;
  const double o = eavesdropper_outage(kDense, kEav);
  const SecrecySpec s{1.0 - std::pow(o, kDense.D / d_star)};
  const auto bounded = constrained_optimum(kDense, kEav, s, FeasibilityMode::BoundedSecrecy);
  const auto strict = constrained_optimum(kDense, kEav, s, FeasibilityMode::StrictSecrecy);
  REQUIRE(bounded.status == Status::Feasible);
  REQUIRE(strict.status == Status::Feasible);
  CHECK(*bounded.d_c == doctest::Approx(d_star).epsilon(1e-12));
  CHECK(std::abs(bounded.throughput - strict.throughput) <= 1e-12 * bounded.throughput);
  CHECK(std::abs(bounded.design->d - strict.design->d) <= 1e-12 * d_star);
}

TEST_CASE("numeric cross check") {
  const auto n = numeric_cross_check(kBase, {1e-2, 1e2, 1e-3, 3.0});
  CHECK(n.converged);
  CHECK(n.throughput == doctest::Approx(0.0961666861537081).epsilon(1e-3));
  CHECK(n.beta == doctest::Approx(3.92155363456751).epsilon(1e-3));

  const auto point = numeric_cross_check(kBase, {2.0, 2.0, 0.5, 0.5});
  CHECK(point.beta == 2.0);
  CHECK(point.d == 0.5);
  CHECK(point.throughput == doctest::Approx(multi_hop_throughput(kBase, {2.0, 0.5})).epsilon(1e-15));

  CHECK_THROWS_AS(numeric_cross_check(kBase, {1.0, 0.5, 0.1, 1.0}), ParameterError);
  CHECK_THROWS_AS(numeric_cross_check(kBase, {1.0, 2.0, 0.1, 4.0}), ParameterError);
}

TEST_CASE("integer hop optimum") {
  const double beta = optimal_beta(4.0);
  CHECK(multi_hop_throughput(kBase, {beta, 3.0 / 9.0}) == doctest::Approx(0.0961413848301032).epsilon(1e-12));
  CHECK(multi_hop_throughput(kBase, {beta, 3.0 / 8.0}) == doctest::Approx(0.0957220403841857).epsilon(1e-12));

  const auto r = integer_hop_optimum(kBase, 50);
  CHECK(r.hops == 9);
  CHECK(r.throughput >= 0.0961413848301032);
  CHECK(r.throughput <= unconstrained_optimum(kBase).throughput);

  const auto one = integer_hop_optimum(kBase, 1);
  CHECK(one.hops == 1);
  CHECK(one.beta == doctest::Approx(optimal_beta_at_hop_length(kBase, 3.0)));
  CHECK_THROWS_AS(integer_hop_optimum(kBase, 0), ParameterError);
}
