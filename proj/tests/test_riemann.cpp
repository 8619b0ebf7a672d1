#include <cmath>
#include <random>

#include <doctest.h>

#include "lwr/riemann.hpp"

using namespace lwr;

namespace {
const FluxModel quad = FluxModel::quadratic();
}

TEST_CASE("classical riemann solution") {
  // upward jump: entropy shock at the chord speed
  const double sigma = (quad(0.8) - quad(0.2)) / 0.6;  // = 0 here
  CHECK(sigma == doctest::Approx(0.0));
  CHECK(classical_riemann(quad, 0.2, 0.8, -0.1) == doctest::Approx(0.2));
  CHECK(classical_riemann(quad, 0.2, 0.8, 0.1) == doctest::Approx(0.8));

  // downward jump: rarefaction fan rho = (1 - xi)/2
  CHECK(classical_riemann(quad, 0.9, 0.1, -1.0) == doctest::Approx(0.9));
  CHECK(classical_riemann(quad, 0.9, 0.1, 1.0) == doctest::Approx(0.1));
  CHECK(classical_riemann(quad, 0.9, 0.1, 0.0) == doctest::Approx(0.5));
  CHECK(classical_riemann(quad, 0.9, 0.1, 0.4) == doctest::Approx(0.3));

  // moving shock, randomized Rankine-Hugoniot cross-check
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 0.05) continue;
    const double s = (quad(b) - quad(a)) / (b - a);
    CHECK(classical_riemann(quad, a, b, s - 1e-9) == doctest::Approx(a));
    CHECK(classical_riemann(quad, a, b, s + 1e-9) == doctest::Approx(b));
  }
}

TEST_CASE("constrained riemann: saturated case") {
  // rho_l = rho_r = 0.5, s = 0, q = 0.1
  const GermCouple g = germ_couple(quad, 0.0, 0.1);
  // left of the interface: shock from 0.5 up to rho_hat moving left
  const double sl = (quad(g.rho_hat) - quad(0.5)) / (g.rho_hat - 0.5);
  CHECK(sl < 0.0);
  CHECK(exact_constrained_riemann(quad, 0.0, 0.1, 0.5, 0.5, sl - 0.01) ==
        doctest::Approx(0.5));
  CHECK(exact_constrained_riemann(quad, 0.0, 0.1, 0.5, 0.5, sl + 0.01) ==
        doctest::Approx(g.rho_hat));
  CHECK(exact_constrained_riemann(quad, 0.0, 0.1, 0.5, 0.5, -1e-9) ==
        doctest::Approx(g.rho_hat));
  CHECK(exact_constrained_riemann(quad, 0.0, 0.1, 0.5, 0.5, 1e-9) ==
        doctest::Approx(g.rho_check));
  // right: shock from rho_check back up to 0.5 moving right
  const double sr = (quad(0.5) - quad(g.rho_check)) / (0.5 - g.rho_check);
  CHECK(sr > 0.0);
  CHECK(exact_constrained_riemann(quad, 0.0, 0.1, 0.5, 0.5, sr + 0.01) ==
        doctest::Approx(0.5));

  // the trace pair lies in the germ
  CHECK(classify_germ(
            quad, 0.0, 0.1,
            exact_constrained_riemann(quad, 0.0, 0.1, 0.5, 0.5, -1e-12),
            exact_constrained_riemann(quad, 0.0, 0.1, 0.5, 0.5, 1e-12)) ==
        GermClass::G1);
}

TEST_CASE("constrained riemann: inactive and G3 data") {
  // q above the classical interface flux: classical solution
  CHECK(exact_constrained_riemann(quad, 0.0, 0.249, 0.5, 0.5, 0.3) ==
        doctest::Approx(0.5));
  for (double xi : {-0.7, -0.2, 0.0, 0.4}) {
    CHECK(exact_constrained_riemann(quad, 0.0, 0.2, 0.05, 0.3, xi) ==
          doctest::Approx(classical_riemann(quad, 0.05, 0.3, xi)));
  }

  // reversed germ order: classical stationary shock, no activation
  const GermCouple g = germ_couple(quad, 0.0, 0.1);
  for (double xi : {-0.5, -0.01, 0.01, 0.5}) {
    CHECK(exact_constrained_riemann(quad, 0.0, 0.1, g.rho_check, g.rho_hat,
                                    xi) ==
          doctest::Approx(classical_riemann(quad, g.rho_check, g.rho_hat,
                                            xi)));
  }

  CHECK_THROWS_AS(exact_constrained_riemann(quad, 0.0, 0.3, 0.5, 0.5, 0.0),
                  InadmissibleConstraint);
}

TEST_CASE("constrained riemann: moving interface") {
  // s = 0.3, q = 0.1: germ (0.5, 0.2), waves split around xi = s
  const GermCouple g = germ_couple(quad, 0.3, 0.1);
  CHECK(g.rho_hat == doctest::Approx(0.5));
  CHECK(g.rho_check == doctest::Approx(0.2));
  // constant 0.35 state: F_0.3(0.35) = 0.1225 > q, so the constraint bites
  const double v_left =
      exact_constrained_riemann(quad, 0.3, 0.1, 0.35, 0.35, 0.3 - 1e-9);
  const double v_right =
      exact_constrained_riemann(quad, 0.3, 0.1, 0.35, 0.35, 0.3 + 1e-9);
  CHECK(v_left == doctest::Approx(0.5));
  CHECK(v_right == doctest::Approx(0.2));
  // normal flux through the interface equals q on both sides
  CHECK(shifted_flux(quad, 0.3, v_left) == doctest::Approx(0.1));
  CHECK(shifted_flux(quad, 0.3, v_right) == doctest::Approx(0.1));
}
