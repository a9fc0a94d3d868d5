#include "secnet/model.hpp"

#include <cmath>
#include <numbers>

#include "secnet/specfun.hpp"

namespace secnet {

namespace {

constexpr double kUnderflowFloor = 1e-300;

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ParameterError(field, what);
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

// lambda_int * kappa * beta^(2/alpha): the interference load per unit area
// seen by a receiver with threshold beta.
double interference_load(const SystemParams& p, double beta) {
  return p.lambda_int * kappa(p.alpha) * std::pow(beta, 2.0 / p.alpha);
}

}  // namespace

void SystemParams::validate() const {
  require(positive_finite(D), "D", "must be a positive finite length");
  require(alpha > 2.0 && std::isfinite(alpha), "alpha", "path-loss exponent must exceed 2");
  require(positive_finite(lambda_int), "lambda_int", "interferer density must be positive");
}

void EavesdropperParams::validate() const {
  require(positive_finite(lambda_eav), "lambda_eav", "eavesdropper density must be positive");
  require(positive_finite(beta_eav), "beta_eav", "eavesdropper SIR threshold must be positive");
}

void SecrecySpec::validate() const {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon", "must lie strictly between 0 and 1");
}

void LinkDesign::validate(const SystemParams& p) const {
  require(positive_finite(beta), "beta", "SIR threshold must be positive");
  require(d > 0.0 && d <= p.D, "d", "hop length must lie in (0, D]");
}

LogProbability LogProbability::from_log(double log_value) {
  const double v = std::exp(log_value);
  if (v < kUnderflowFloor) return {log_value, 0.0, true};
  return {log_value, v, false};
}

double rate_bits(double beta) { return std::log1p(beta) / std::numbers::ln2; }

double single_hop_success(const SystemParams& p, const LinkDesign& des) {
  p.validate();
  des.validate(p);
  return std::exp(-interference_load(p, des.beta) * std::numbers::pi * des.d * des.d);
}

LogProbability end_to_end_success(const SystemParams& p, const LinkDesign& des) {
  p.validate();
  des.validate(p);
  // (exp(-L pi d^2))^(D/d) = exp(-L pi D d)
  return LogProbability::from_log(-interference_load(p, des.beta) * std::numbers::pi * p.D *
                                  des.d);
}

double multi_hop_throughput(const SystemParams& p, const LinkDesign& des) {
  const LogProbability e2e = end_to_end_success(p, des);
  return des.d / p.D * rate_bits(des.beta) * e2e.value;
}

double nearest_eav_distance_pdf(const EavesdropperParams& e, double r) {
  e.validate();
  require(r >= 0.0, "r", "distance must be non-negative");
  const double pi = std::numbers::pi;
  return e.lambda_eav * 2.0 * pi * r * std::exp(-e.lambda_eav * pi * r * r);
}

double nearest_eav_distance_cdf(const EavesdropperParams& e, double r) {
  e.validate();
  require(r >= 0.0, "r", "distance must be non-negative");
  return -std::expm1(-e.lambda_eav * std::numbers::pi * r * r);
}

double eavesdropper_outage(const SystemParams& p, const EavesdropperParams& e) {
  p.validate();
  e.validate();
  const double load = interference_load(p, e.beta_eav);
  return load / (load + e.lambda_eav);
}

LogProbability secrecy_log_probability(const SystemParams& p, const EavesdropperParams& e,
                                       double d) {
  p.validate();
  e.validate();
  require(d > 0.0 && d <= p.D, "d", "hop length must lie in (0, D]");
  const double load = interference_load(p, e.beta_eav);
  // ln(load / (load + lambda_eav)) without cancellation when lambda_eav is tiny.
  const double log_outage = -std::log1p(e.lambda_eav / load);
  return LogProbability::from_log(p.D / d * log_outage);
}

double secrecy_probability(const SystemParams& p, const EavesdropperParams& e, double d) {
  return secrecy_log_probability(p, e, d).value;
}

double distance_bound_dc(const SystemParams& p, const EavesdropperParams& e,
                         const SecrecySpec& s) {
  p.validate();
  e.validate();
  s.validate();
  const double load = interference_load(p, e.beta_eav);
  return p.D * -std::log1p(e.lambda_eav / load) / std::log1p(-s.epsilon);
}

}  // namespace secnet
