#pragma once

#include <stdexcept>
#include <string>

namespace secnet {

/// Raised when a parameter violates its domain. `field()` names the
/// offending parameter so front ends can point at it.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Legitimate-link geometry and the interferer field.
/// All lengths share one arbitrary unit; densities are per unit area.
struct SystemParams {
  double D;           // aggregator to control-unit distance
  double alpha;       // path-loss exponent, > 2
  double lambda_int;  // interferer density

  void validate() const;
};

struct EavesdropperParams {
  double lambda_eav;  // eavesdropper density
  double beta_eav;    // SIR decoding threshold of an eavesdropper

  void validate() const;
};

struct SecrecySpec {
  double epsilon;  // tolerated probability that some hop is overheard

  void validate() const;
};

/// One (beta, d) design point. The hop count D / d is real-valued.
struct LinkDesign {
  double beta;
  double d;

  void validate(const SystemParams& p) const;
  double hops(const SystemParams& p) const { return p.D / d; }
};

/// A probability carried together with its natural logarithm. Values whose
/// magnitude drops below 1e-300 are reported as 0 with `underflow` set;
/// `log_value` stays exact.
struct LogProbability {
  double log_value;
  double value;
  bool underflow;

  static LogProbability from_log(double log_value);
};

/// Spectral efficiency log2(1 + beta) in bits/s/Hz.
double rate_bits(double beta);

/// Per-hop success probability exp(-lambda_int kappa pi d^2 beta^(2/alpha))
/// under Rayleigh fading and a Poisson interferer field.
double single_hop_success(const SystemParams& p, const LinkDesign& des);

/// Probability that all D / d hops succeed, i.e. the per-hop success raised to
/// the real-valued hop count, evaluated in log space.
LogProbability end_to_end_success(const SystemParams& p, const LinkDesign& des);

/// Multi-hop throughput (d / D) log2(1 + beta) P_suc^(D / d).
double multi_hop_throughput(const SystemParams& p, const LinkDesign& des);

/// Density of the distance from an arbitrary point to the nearest point of an
/// eavesdropper Poisson field. Negative r throws ParameterError.
double nearest_eav_distance_pdf(const EavesdropperParams& e, double r);
double nearest_eav_distance_cdf(const EavesdropperParams& e, double r);

/// Per-hop probability that the nearest eavesdropper fails to decode:
///   lambda_int kappa beta_eav^(2/alpha) / (lambda_int kappa beta_eav^(2/alpha) + lambda_eav).
double eavesdropper_outage(const SystemParams& p, const EavesdropperParams& e);

/// Probability that no hop of the D / d hop link is overheard.
double secrecy_probability(const SystemParams& p, const EavesdropperParams& e, double d);
LogProbability secrecy_log_probability(const SystemParams& p, const EavesdropperParams& e,
                                       double d);

/// Hop length at which the secrecy probability equals 1 - epsilon:
///   d_c = D ln(eavesdropper_outage) / ln(1 - epsilon).
double distance_bound_dc(const SystemParams& p, const EavesdropperParams& e,
                         const SecrecySpec& s);

}  // namespace secnet
