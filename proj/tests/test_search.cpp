#include <cmath>

#include "doctest.h"
#include "secnet/search.hpp"

using namespace secnet::search;

TEST_CASE("golden section finds an interior maximum") {
  const auto r = golden_section_maximize([](double x) { return -(x - 1.3) * (x - 1.3); }, -5.0, 5.0, 1e-12);
  CHECK(r.x == doctest::Approx(1.3).epsilon(1e-9));
}

TEST_CASE("golden section returns an endpoint for monotone functions") {
  CHECK(golden_section_maximize([](double x) { return x; }, 0.0, 2.0, 1e-12).x == 2.0);
  CHECK(golden_section_maximize([](double x) { return -x; }, 0.0, 2.0, 1e-12).x == 0.0);
}

TEST_CASE("nelder mead minimizes the Rosenbrock function") {
  auto rosen = [](const Point<2>& x) {
    return 100.0 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
  };
  const auto r = nelder_mead_minimize<2>(rosen, {-1.2, 1.0}, {0.5, 0.5}, {-5, -5}, {5, 5});
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("nelder mead respects the box") {
  auto bowl = [](const Point<2>& x) { return (x[0] - 3) * (x[0] - 3) + (x[1] + 3) * (x[1] + 3); };
  const auto r = nelder_mead_minimize<2>(bowl, {0.0, 0.0}, {0.3, 0.3}, {-1, -1}, {1, 1});
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(-1.0));
}

TEST_CASE("nelder mead reports non-convergence when out of iterations") {
  auto bowl = [](const Point<2>& x) { return x[0] * x[0] + x[1] * x[1]; };
  const auto r = nelder_mead_minimize<2>(bowl, {3.0, 3.0}, {1.0, 1.0}, {-9, -9}, {9, 9}, 1e-10, 5);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 5);
}
