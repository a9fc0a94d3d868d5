#include "secnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

#include "secnet/specfun.hpp"

namespace secnet {

namespace {

constexpr double kPi = std::numbers::pi;

// Sub-stream tags. Each trial owns the streams (seed, trial, tag).
enum StreamTag : std::uint64_t {
  kLinkTag = 1,
  kEavPositionTag = 2,
  kEavFieldTag = 3,
  kNearestTag = 4,
  kHopTagBase = 1000,
  kAnyEavFieldTagBase = 1u << 20,
};

// Walks the interferer field outward from the receiver (Poisson arrivals in
// enclosed area) up to `radius`, accumulating Rayleigh-faded power. Returns
// true as soon as the aggregate reaches `threshold`; the remaining field can
// only add to it.
bool interference_reaches(CounterRng& rng, double intensity, double alpha, double radius,
                          double threshold) {
  const double r2_max = radius * radius;
  double area = 0.0;
  double total = 0.0;
  for (;;) {
    area += rng.exponential() / intensity;
    const double r2 = area / kPi;
    if (r2 > r2_max) return false;
    total += rng.exponential() * std::pow(r2, -alpha / 2.0);
    if (total >= threshold) return true;
  }
}

// Hop success: SIR = g0 d^-alpha / I > beta.
bool hop_succeeds(CounterRng& rng, const SystemParams& p, double d, double beta, double radius) {
  const double threshold = rng.exponential() * std::pow(d, -p.alpha) / beta;
  return !interference_reaches(rng, p.lambda_int, p.alpha, radius, threshold);
}

double field_radius(const SystemParams& p, double d, const MonteCarloConfig& cfg) {
  return cfg.region_radius ? *cfg.region_radius
                           : auto_region_radius(p, d, cfg.far_field_tolerance);
}

std::uint64_t count_hits(const MonteCarloConfig& cfg,
                         const std::function<bool(std::uint64_t)>& trial) {
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(cfg.threads, 1, std::max<std::uint64_t>(cfg.trials, 1)));
  if (workers == 1) {
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) hits += trial(t) ? 1 : 0;
    return hits;
  }
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::jthread> pool;
  const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(cfg.trials, begin + chunk);
      for (std::uint64_t t = begin; t < end; ++t) partial[w] += trial(t) ? 1 : 0;
    });
  }
  pool.clear();
  std::uint64_t hits = 0;
  for (auto h : partial) hits += h;
  return hits;
}

}  // namespace

void MonteCarloConfig::validate() const {
  if (trials < 1) throw ParameterError("trials", "must be at least 1");
  if (region_radius && !(*region_radius > 0.0 && std::isfinite(*region_radius))) {
    throw ParameterError("region_radius", "must be positive");
  }
  if (!(far_field_tolerance > 0.0)) {
    throw ParameterError("far_field_tolerance", "must be positive");
  }
}

EstimateWithCI EstimateWithCI::proportion(std::uint64_t hits, std::uint64_t trials) {
  const double n = static_cast<double>(trials);
  const double mean = static_cast<double>(hits) / n;
  return {mean, std::sqrt(mean * (1.0 - mean) / n), trials};
}

double auto_region_radius(const SystemParams& p, double d, double tol) {
  p.validate();
  if (!(tol > 0.0)) throw ParameterError("far_field_tolerance", "must be positive");
  if (!(d > 0.0)) throw ParameterError("d", "must be positive");
  // 2 pi lambda R^(2-alpha) / (alpha - 2) = tol d^-alpha
  const double r = std::pow(2.0 * kPi * p.lambda_int * std::pow(d, p.alpha) /
                                (tol * (p.alpha - 2.0)),
                            1.0 / (p.alpha - 2.0));
  return std::max(r, 10.0 * d);
}

std::vector<Point2> sample_ppp_disk(double intensity, double radius, CounterRng& rng) {
  if (!(intensity > 0.0)) throw ParameterError("intensity", "must be positive");
  if (!(radius > 0.0)) throw ParameterError("radius", "must be positive");
  const double mass = intensity * kPi * radius * radius;
  std::size_t count = 0;
  for (double s = rng.exponential(); s <= mass; s += rng.exponential()) ++count;

  std::vector<Point2> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * kPi * rng.uniform();
    points.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return points;
}

EstimateWithCI estimate_p_suc(const SystemParams& p, const LinkDesign& des,
                              const MonteCarloConfig& cfg) {
  p.validate();
  des.validate(p);
  cfg.validate();
  const double radius = field_radius(p, des.d, cfg);
  const auto hits = count_hits(cfg, [&](std::uint64_t t) {
    CounterRng rng(cfg.seed, t, kLinkTag);
    return hop_succeeds(rng, p, des.d, des.beta, radius);
  });
  return EstimateWithCI::proportion(hits, cfg.trials);
}

EstimateWithCI estimate_eav_outage(const SystemParams& p, const EavesdropperParams& e,
                                   const MonteCarloConfig& cfg) {
  p.validate();
  e.validate();
  cfg.validate();
  const auto hits = count_hits(cfg, [&](std::uint64_t t) {
    CounterRng pos(cfg.seed, t, kEavPositionTag);
    const double r = std::sqrt(pos.exponential() / (e.lambda_eav * kPi));
    CounterRng field(cfg.seed, t, kEavFieldTag);
    return !hop_succeeds(field, p, r, e.beta_eav, field_radius(p, r, cfg));
  });
  return EstimateWithCI::proportion(hits, cfg.trials);
}

EstimateWithCI estimate_any_eav_outage(const SystemParams& p, const EavesdropperParams& e,
                                       const MonteCarloConfig& cfg) {
  p.validate();
  e.validate();
  cfg.validate();
  const double load = p.lambda_int * kappa(p.alpha) * kPi * std::pow(e.beta_eav, 2.0 / p.alpha);
  const double r2_cut = 40.0 / load;
  const auto hits = count_hits(cfg, [&](std::uint64_t t) {
    CounterRng pos(cfg.seed, t, kEavPositionTag);
    double area = 0.0;
    for (std::uint64_t k = 0;; ++k) {
      area += pos.exponential() / e.lambda_eav;
      const double r2 = area / kPi;
      if (r2 > r2_cut) return true;
      const double r = std::sqrt(r2);
      CounterRng field(cfg.seed, t, kAnyEavFieldTagBase + k);
      if (hop_succeeds(field, p, r, e.beta_eav, field_radius(p, r, cfg))) return false;
    }
  });
  return EstimateWithCI::proportion(hits, cfg.trials);
}

EstimateWithCI estimate_end_to_end(const SystemParams& p, const LinkDesign& des,
                                   const MonteCarloConfig& cfg) {
  p.validate();
  des.validate(p);
  cfg.validate();
  const double real_hops = p.D / des.d;
  const double hops = std::round(real_hops);
  if (std::abs(real_hops - hops) > 1e-6 * hops) {
    throw ParameterError("d", "D / d must be an integer hop count for per-hop simulation");
  }
  const auto h = static_cast<std::uint64_t>(hops);
  const double radius = field_radius(p, des.d, cfg);
  const auto hits = count_hits(cfg, [&](std::uint64_t t) {
    for (std::uint64_t k = 0; k < h; ++k) {
      CounterRng rng(cfg.seed, t, h == 1 ? kLinkTag : kHopTagBase + k);
      if (!hop_succeeds(rng, p, des.d, des.beta, radius)) return false;
    }
    return true;
  });
  return EstimateWithCI::proportion(hits, cfg.trials);
}

std::vector<double> sample_nearest_eav_distances(const EavesdropperParams& e,
                                                 const MonteCarloConfig& cfg) {
  e.validate();
  cfg.validate();
  // Probability that the disk is empty is e^-50.
  const double radius = std::sqrt(50.0 / (e.lambda_eav * kPi));
  std::vector<double> out(cfg.trials);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    CounterRng rng(cfg.seed, t, kNearestTag);
    double best = radius;
    for (const auto& pt : sample_ppp_disk(e.lambda_eav, radius, rng)) {
      best = std::min(best, std::hypot(pt.x, pt.y));
    }
    out[t] = best;
  }
  return out;
}

}  // namespace secnet
