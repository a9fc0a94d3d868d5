#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "secnet/model.hpp"

using namespace secnet;

namespace {
constexpr double pi = std::numbers::pi;
const SystemParams kBase{3.0, 4.0, 0.1};
const SystemParams kDense{3.0, 4.0, 1.0};
const EavesdropperParams kEav{0.1, 1.0};
const SecrecySpec kTenPercent{0.1};
}  // namespace

TEST_CASE("parameter validation names the field") {
  auto field_of = [](auto&& fn) {
    try {
      fn();
    } catch (const ParameterError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of([] { SystemParams{0.0, 4.0, 0.1}.validate(); }) == "D");
  CHECK(field_of([] { SystemParams{3.0, 2.0, 0.1}.validate(); }) == "alpha");
  CHECK(field_of([] { SystemParams{3.0, 4.0, -1.0}.validate(); }) == "lambda_int");
  CHECK(field_of([] { EavesdropperParams{0.0, 1.0}.validate(); }) == "lambda_eav");
  CHECK(field_of([] { EavesdropperParams{0.1, 0.0}.validate(); }) == "beta_eav");
  CHECK(field_of([] { SecrecySpec{1.0}.validate(); }) == "epsilon");
  CHECK(field_of([] { LinkDesign{1.0, 4.0}.validate(kBase); }) == "d");
  CHECK(field_of([] { LinkDesign{0.0, 1.0}.validate(kBase); }) == "beta");
}

TEST_CASE("single_hop_success") {
  // exp(-0.1 * (pi/2) * pi)
  CHECK(single_hop_success(kBase, {1.0, 1.0}) == doctest::Approx(0.610498025265797).epsilon(1e-13));
  CHECK(single_hop_success(kBase, {1.0, 1e-9}) == doctest::Approx(1.0));
  const double a = single_hop_success({3.0, 4.0, 0.1}, {2.0, 0.7});
  const double b = single_hop_success({3.0, 4.0, 0.2}, {2.0, 0.7});
  CHECK(b == doctest::Approx(a * a).epsilon(1e-14));
}

TEST_CASE("single_hop_success is strictly decreasing in d, beta and lambda_int") {
  double prev = 2.0;
  for (double d = 0.01; d <= 3.0; d += 0.01) {
    const double v = single_hop_success(kBase, {1.0, d});
    REQUIRE(v < prev);
    REQUIRE(v > 0.0);
    prev = v;
  }
  prev = 2.0;
  for (double b = 0.01; b <= 100.0; b *= 1.1) {
    const double v = single_hop_success(kBase, {b, 1.0});
    REQUIRE(v < prev);
    prev = v;
  }
  prev = 2.0;
  for (double l = 0.01; l <= 10.0; l *= 1.1) {
    const double v = single_hop_success({3.0, 4.0, l}, {1.0, 1.0});
    REQUIRE(v < prev);
    prev = v;
  }
}

TEST_CASE("multi_hop_throughput against the definition") {
  for (double beta : {0.1, 1.0, 3.9, 20.0}) {
    for (double d : {0.05, 0.3, 1.0, 3.0}) {
      CAPTURE(beta);
      CAPTURE(d);
      CHECK(multi_hop_throughput(kBase, {beta, d}) ==
            doctest::Approx(oracle::throughput(3.0, 4.0, 0.1, beta, d)).epsilon(1e-12));
    }
  }
  // single hop: log2(1 + beta) * P_suc
  CHECK(multi_hop_throughput(kBase, {1.0, 3.0}) ==
        doctest::Approx(single_hop_success(kBase, {1.0, 3.0})).epsilon(1e-14));
  CHECK(multi_hop_throughput(kBase, {1e-12, 1.0}) < 1e-11);
}

TEST_CASE("throughput is unimodal in d with the predicted interior maximizer") {
  const double beta = 2.0;
  const double predicted = 1.0 / (0.1 * (pi / 2.0) * pi * std::sqrt(beta) * 3.0);
  REQUIRE(predicted < 3.0);
  int sign_changes = 0;
  double prev = multi_hop_throughput(kBase, {beta, 0.001});
  double prev_slope = 1.0, argmax = 0.0;
  for (double d = 0.002; d <= 3.0; d += 0.001) {
    const double v = multi_hop_throughput(kBase, {beta, d});
    const double slope = v - prev;
    if ((slope < 0) != (prev_slope < 0)) {
      ++sign_changes;
      argmax = d - 0.001;
    }
    prev = v;
    prev_slope = slope;
  }
  CHECK(sign_changes == 1);
  CHECK(argmax == doctest::Approx(predicted).epsilon(0.01));
}

TEST_CASE("end_to_end_success underflow is flagged") {
  const auto tiny = end_to_end_success({3000.0, 4.0, 1000.0}, {100.0, 3000.0});
  CHECK(tiny.underflow);
  CHECK(tiny.value == 0.0);
  CHECK(tiny.log_value < -700.0);
  const auto normal = end_to_end_success(kBase, {1.0, 1.0});
  CHECK_FALSE(normal.underflow);
  CHECK(normal.value == doctest::Approx(std::pow(single_hop_success(kBase, {1.0, 1.0}), 3.0)));
}

TEST_CASE("nearest eavesdropper distance distribution") {
  CHECK(nearest_eav_distance_pdf(kEav, 0.0) == 0.0);
  const double r_med = std::sqrt(std::log(2.0) / (0.1 * pi));
  CHECK(r_med == doctest::Approx(1.48538075978064).epsilon(1e-12));
  CHECK(nearest_eav_distance_cdf(kEav, r_med) == doctest::Approx(0.5).epsilon(1e-14));
  const double mass =
      oracle::integrate([](double r) { return nearest_eav_distance_pdf(kEav, r); }, 0.0, 40.0);
  CHECK(std::abs(mass - 1.0) < 1e-9);
  CHECK_THROWS_AS(nearest_eav_distance_pdf(kEav, -1.0), ParameterError);
  CHECK_THROWS_AS(nearest_eav_distance_cdf(kEav, -1.0), ParameterError);
}

TEST_CASE("eavesdropper_outage") {
  CHECK(eavesdropper_outage(kDense, kEav) == doctest::Approx(0.940148300306698).epsilon(1e-13));
  CHECK(eavesdropper_outage(kBase, kEav) == doctest::Approx(0.611015470351657).epsilon(1e-13));
  CHECK(eavesdropper_outage(kBase, {1e-12, 1.0}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("eavesdropper_outage equals the averaged outage integral") {
  for (const auto& [p, e] : {std::pair{kDense, kEav}, std::pair{kBase, kEav},
                             std::pair{SystemParams{3.0, 3.0, 0.5}, EavesdropperParams{0.3, 2.0}}}) {
    const double load = p.lambda_int * oracle::gamma(1.0 + 2.0 / p.alpha) *
                        oracle::gamma(1.0 - 2.0 / p.alpha) * pi *
                        std::pow(e.beta_eav, 2.0 / p.alpha);
    const double rmax = std::sqrt(60.0 / (e.lambda_eav * pi));
    const double avg = oracle::integrate(
        [&](double r) { return (1.0 - std::exp(-load * r * r)) * nearest_eav_distance_pdf(e, r); },
        0.0, rmax);
    CHECK(std::abs(avg - eavesdropper_outage(p, e)) < 1e-8);
  }
}

TEST_CASE("secrecy_probability") {
  const double o = eavesdropper_outage(kDense, kEav);
  CHECK(secrecy_probability(kDense, kEav, 3.0) == doctest::Approx(o).epsilon(1e-14));
  CHECK(secrecy_probability(kDense, kEav, 0.5) ==
        doctest::Approx(std::pow(secrecy_probability(kDense, kEav, 1.0), 2.0)).epsilon(1e-13));
  const double dc = distance_bound_dc(kDense, kEav, kTenPercent);
  CHECK(secrecy_probability(kDense, kEav, dc) == doctest::Approx(0.9).epsilon(1e-12));
  double prev = 0.0;
  for (double d = 0.01; d <= 3.0; d += 0.01) {
    const double v = secrecy_probability(kDense, kEav, d);
    REQUIRE(v > prev);
    REQUIRE((v >= 0.9) == (d >= dc));
    prev = v;
  }
  CHECK_THROWS_AS(secrecy_probability(kDense, kEav, 3.5), ParameterError);
}

TEST_CASE("distance_bound_dc values") {
  CHECK(distance_bound_dc(kDense, kEav, kTenPercent) == doctest::Approx(1.75732767136205).epsilon(1e-12));
  CHECK(distance_bound_dc(kBase, kEav, kTenPercent) == doctest::Approx(14.0270668949599).epsilon(1e-12));
  const double o = eavesdropper_outage(kDense, kEav);
  CHECK(distance_bound_dc(kDense, kEav, {1.0 - o}) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("distance_bound_dc monotonicity") {
  double prev = 1e300;
  for (double b = 0.01; b < 100.0; b *= 1.2) {
    const double v = distance_bound_dc(kDense, {0.1, b}, kTenPercent);
    REQUIRE(v < prev);
    prev = v;
  }
  prev = 1e300;
  for (double l = 0.01; l < 100.0; l *= 1.2) {
    const double v = distance_bound_dc({3.0, 4.0, l}, kEav, kTenPercent);
    REQUIRE(v < prev);
    prev = v;
  }
  prev = 0.0;
  for (double l = 0.001; l < 10.0; l *= 1.2) {
    const double v = distance_bound_dc(kDense, {l, 1.0}, kTenPercent);
    REQUIRE(v > prev);
    prev = v;
  }
  prev = 1e300;
  for (double e = 0.01; e < 0.99; e += 0.01) {
    const double v = distance_bound_dc(kDense, kEav, {e});
    REQUIRE(v < prev);
    prev = v;
  }
}
