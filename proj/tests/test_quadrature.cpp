#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "koenigs/errors.hpp"
#include "koenigs/quadrature.hpp"

using namespace koenigs;
using namespace koenigs::quadrature;

TEST_CASE("gauss_legendre: weights sum to 2 and integrate polynomials exactly") {
  for (int n : {1, 2, 5, 32, 257}) {
    const Rule& r = gauss_legendre(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    double w = 0, moment = 0;
    for (int i = 0; i < n; ++i) {
      w += r.weights[i];
      moment += r.weights[i] * std::pow(r.nodes[i], 2 * n - 2);
    }
    CAPTURE(n);
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(moment == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gauss_legendre(0), ParameterError);
}

TEST_CASE("integrate: sigmoidal grade handles endpoint singularities") {
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  const double plain = std::abs(integrate(f, 0.0, 1.0, 64, 1) - 2.0);
  const double graded = std::abs(integrate(f, 0.0, 1.0, 64, 3) - 2.0);
  CHECK(graded < 1e-3 * plain);
  CHECK(integrate(f, 0.0, 1.0, 256, 5) == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 16) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
  CHECK_THROWS_AS(integrate(f, 0.0, 1.0, 16, 0), ParameterError);
}

TEST_CASE("integrate_doubling: converges and reports its error") {
  auto g = [](double x) { return std::exp(-x * x); };
  const Estimate e = integrate_doubling(g, -8.0, 8.0, 1e-13);
  CHECK(e.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  CHECK(e.error < 1e-12);
  CHECK(e.nodes >= 32);
}
