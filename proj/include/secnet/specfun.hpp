#pragma once

namespace secnet {

/// Principal branch of the Lambert W function: the solution w >= -1 of
/// w * exp(w) = x, for x >= -1/e.
///
/// Inputs below -1/e by at most 1e-12 are treated as the branch point and
/// return -1. Anything further below throws std::domain_error.
double lambert_w0(double x);

/// Interference constant Gamma(1 + 2/alpha) * Gamma(1 - 2/alpha) for a
/// path-loss exponent alpha > 2, evaluated through the reflection identity
/// (2 pi / alpha) / sin(2 pi / alpha). Throws std::domain_error for alpha <= 2.
double kappa(double alpha);

}  // namespace secnet
