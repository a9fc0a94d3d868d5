#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "secnet/model.hpp"
#include "secnet/rng.hpp"

namespace secnet {

struct MonteCarloConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  /// Truncation radius of the interferer field; empty means automatic.
  std::optional<double> region_radius;
  double far_field_tolerance = 1e-3;
  /// Worker threads; results do not depend on this value.
  unsigned threads = 1;

  void validate() const;
};

struct EstimateWithCI {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;

  /// Proportion estimate with std_error = sqrt(p (1 - p) / n).
  static EstimateWithCI proportion(std::uint64_t hits, std::uint64_t trials);
};

struct Point2 {
  double x, y;
};

/// Radius R beyond which the mean interference, 2 pi lambda_int R^(2 - alpha) / (alpha - 2),
/// is at most `tol` times the mean received signal d^(-alpha). Floored at 10 d.
double auto_region_radius(const SystemParams& p, double d, double tol);

/// Poisson field of the given intensity on the disk of the given radius about
/// the origin.
std::vector<Point2> sample_ppp_disk(double intensity, double radius, CounterRng& rng);

/// Single-hop success over Rayleigh fading and a fresh interferer field per trial.
EstimateWithCI estimate_p_suc(const SystemParams& p, const LinkDesign& des,
                              const MonteCarloConfig& cfg);

/// Probability that the eavesdropper nearest to the transmitter fails to decode.
/// Each eavesdropper sees its own interferer field realization.
EstimateWithCI estimate_eav_outage(const SystemParams& p, const EavesdropperParams& e,
                                   const MonteCarloConfig& cfg);

/// Probability that no eavesdropper at all decodes the hop. Eavesdroppers
/// are considered out to the distance where the chance of decoding drops
/// below e^-40; each gets an independent interferer field. Used to report the
/// gap to the nearest-eavesdropper model, not to assert it.
EstimateWithCI estimate_any_eav_outage(const SystemParams& p, const EavesdropperParams& e,
                                       const MonteCarloConfig& cfg);

/// All h = round(D / d) hops succeed, each against its own interferer field.
/// Throws ParameterError unless D / d is within 1e-6 (relative) of h.
EstimateWithCI estimate_end_to_end(const SystemParams& p, const LinkDesign& des,
                                   const MonteCarloConfig& cfg);

/// Nearest-point distances from the origin drawn from full disk samples of the
/// eavesdropper field (one per trial), for distribution checks.
std::vector<double> sample_nearest_eav_distances(const EavesdropperParams& e,
                                                 const MonteCarloConfig& cfg);

}  // namespace secnet
