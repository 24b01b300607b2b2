#include <cmath>

#include "doctest.h"
#include "nanopull/quadrature.hpp"
#include "nanopull/special.hpp"

using namespace nanopull;

TEST_SUITE("special") {

TEST_CASE("sine integral reference values") {
  // Abramowitz & Stegun tables
  CHECK(sine_integral(1.0) == doctest::Approx(0.9460830703).epsilon(1e-9));
  CHECK(sine_integral(10.0) == doctest::Approx(1.6583475942).epsilon(1e-9));
  CHECK(sine_integral(0.0) == doctest::Approx(0.0));
  // Si(x) -> pi/2
  CHECK(sine_integral(1e4) == doctest::Approx(constants::pi / 2).epsilon(1e-4));
}

TEST_CASE("cosine integral reference values") {
  CHECK(cosine_integral(1.0) == doctest::Approx(0.3374039229).epsilon(1e-9));
  CHECK(cosine_integral(10.0) == doctest::Approx(-0.0454564330).epsilon(1e-7));
  // Ci(x) ~ gamma + ln x for small x
  CHECK(cosine_integral(1e-6) ==
        doctest::Approx(0.5772156649 + std::log(1e-6)).epsilon(1e-9));
}

TEST_CASE("special functions agree with direct quadrature") {
  for (double x : {0.5, 3.0, 7.5}) {
    const double si = integrate(uniform_panels(0.0, x, 32), 12, [](double t) {
      return t == 0.0 ? 1.0 : std::sin(t) / t;
    });
    CHECK(sine_integral(x) == doctest::Approx(si).epsilon(1e-10));
  }
}

TEST_CASE("eiz never overflows in the upper half plane") {
  CHECK(std::abs(eiz(cplx(1e4, 1e4))) <= 1.0);
  CHECK(std::abs(eiz(cplx(-1e8, 0.0))) == doctest::Approx(1.0));
}

TEST_CASE("upper_half fixes the branch") {
  CHECK(upper_half(cplx(1.0, -2.0)) == cplx(-1.0, 2.0));
  CHECK(upper_half(cplx(1.0, 2.0)) == cplx(1.0, 2.0));
}

}  // TEST_SUITE

TEST_SUITE("quadrature") {

TEST_CASE("gauss rule integrates polynomials exactly") {
  const GaussRule& g = gauss_legendre(8);
  double acc = 0.0;
  for (size_t i = 0; i < g.x.size(); ++i)
    acc += g.w[i] * std::pow(g.x[i], 14);  // degree 14 < 2*8-1
  CHECK(acc == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("graded panels resolve an endpoint singularity") {
  // int_0^1 ln(x) dx = -1
  const auto ps = graded_panels(0.0, 1.0, 0.0, 1e-12);
  const double v =
      integrate(ps, 10, [](double x) { return std::log(x); });
  CHECK(v == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("composite rule matches integrate") {
  const auto ps = uniform_panels(-1.0, 2.0, 7);
  const CompositeRule cr = composite(ps, 6);
  double acc = 0.0;
  for (size_t i = 0; i < cr.x.size(); ++i) acc += cr.w[i] * std::exp(cr.x[i]);
  const double ref =
      integrate(ps, 6, [](double x) { return std::exp(x); });
  CHECK(acc == doctest::Approx(ref).epsilon(1e-14));
}

}  // TEST_SUITE
