#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace secnet::search {

struct ScalarOptimum {
  double x;
  double value;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Stops once the bracket is narrower than `tol` or after `max_iterations`.
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double tol, int max_iterations = 500);

template <std::size_t N>
using Point = std::array<double, N>;

template <std::size_t N>
struct SimplexResult {
  Point<N> x;
  double value;
  int iterations;
  bool converged;
};

/// Box-constrained Nelder-Mead minimization. Trial points are projected onto
/// [lower, upper]. Converges when the largest vertex distance from the best
/// vertex falls below `diameter_tol`.
template <std::size_t N>
SimplexResult<N> nelder_mead_minimize(const std::function<double(const Point<N>&)>& f,
                                      const Point<N>& start, const Point<N>& step,
                                      const Point<N>& lower, const Point<N>& upper,
                                      double diameter_tol = 1e-10,
                                      int max_iterations = 10000) {
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  auto project = [&](Point<N> p) {
    for (std::size_t i = 0; i < N; ++i) p[i] = std::clamp(p[i], lower[i], upper[i]);
    return p;
  };

  std::array<Point<N>, N + 1> v;
  std::array<double, N + 1> fv;
  v[0] = project(start);
  for (std::size_t i = 0; i < N; ++i) {
    Point<N> p = v[0];
    p[i] += step[i];
    if (p[i] > upper[i]) p[i] = v[0][i] - step[i];
    v[i + 1] = project(p);
  }
  for (std::size_t i = 0; i <= N; ++i) fv[i] = f(v[i]);

  auto diameter = [&]() {
    double dmax = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < N; ++k) s += (v[i][k] - v[0][k]) * (v[i][k] - v[0][k]);
      dmax = std::max(dmax, std::sqrt(s));
    }
    return dmax;
  };

  auto order = [&]() {
    std::array<std::size_t, N + 1> idx;
    for (std::size_t i = 0; i <= N; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
    auto v2 = v;
    auto f2 = fv;
    for (std::size_t i = 0; i <= N; ++i) {
      v[i] = v2[idx[i]];
      fv[i] = f2[idx[i]];
    }
  };

  auto along = [&](const Point<N>& c, const Point<N>& w, double t) {
    Point<N> p;
    for (std::size_t k = 0; k < N; ++k) p[k] = c[k] + t * (w[k] - c[k]);
    return project(p);
  };

  int it = 0;
  order();
  for (; it < max_iterations; ++it) {
    if (diameter() < diameter_tol) return {v[0], fv[0], it, true};

    Point<N> centroid{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) centroid[k] += v[i][k] / static_cast<double>(N);

    const Point<N> xr = along(centroid, v[N], -kReflect);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const Point<N> xe = along(centroid, v[N], -kExpand);
      const double fe = f(xe);
      if (fe < fr) {
        v[N] = xe;
        fv[N] = fe;
      } else {
        v[N] = xr;
        fv[N] = fr;
      }
    } else if (fr < fv[N - 1]) {
      v[N] = xr;
      fv[N] = fr;
    } else {
      const bool outside = fr < fv[N];
      const Point<N> xc = outside ? along(centroid, xr, kContract) : along(centroid, v[N], kContract);
      const double fc = f(xc);
      if (fc < std::min(fr, fv[N])) {
        v[N] = xc;
        fv[N] = fc;
      } else {
        for (std::size_t i = 1; i <= N; ++i) {
          v[i] = along(v[0], v[i], kShrink);
          fv[i] = f(v[i]);
        }
      }
    }
    order();
  }
  return {v[0], fv[0], it, diameter() < diameter_tol};
}

}  // namespace secnet::search
