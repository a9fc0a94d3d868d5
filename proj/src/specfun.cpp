#include "secnet/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace secnet {

namespace {

constexpr double kBranchSlack = 1e-12;
constexpr int kMaxHalleyIterations = 50;

double initial_guess(double x) {
  constexpr double e = std::numbers::e;
  if (x < -0.25) {
    // Series about the branch point in p = sqrt(2 (1 + e x)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (1.0 + e * x)));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }
  if (x <= e) {
    return std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double x) {
  const double branch = -std::exp(-1.0);
  if (std::isnan(x) || x < branch - kBranchSlack) {
    throw std::domain_error("lambert_w0: argument " + std::to_string(x) +
                            " is below -1/e");
  }
  if (x <= branch) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(x);
  for (int it = 0; it < kMaxHalleyIterations; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (f == 0.0 || wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double step = f / denom;
    w -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(w))) break;
  }
  return std::max(w, -1.0);
}

double kappa(double alpha) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw std::domain_error("kappa: path-loss exponent must exceed 2, got " +
                            std::to_string(alpha));
  }
  const double a = 2.0 * std::numbers::pi / alpha;
  return a / std::sin(a);
}

}  // namespace secnet
