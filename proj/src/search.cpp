#include "secnet/search.hpp"

namespace secnet::search {

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double tol, int max_iterations) {
  if (hi < lo) std::swap(lo, hi);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iterations && (b - a) > tol; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  // Endpoints are candidates too: a monotone objective pins the optimum there.
  ScalarOptimum best{c, fc};
  for (double x : {d, lo, hi}) {
    const double fx = f(x);
    if (fx > best.value) best = {x, fx};
  }
  return best;
}

}  // namespace secnet::search
