#include <cmath>
#include <random>

#include <doctest.h>

#include "lwr/flux.hpp"

using namespace lwr;

namespace {

const FluxModel quad = FluxModel::quadratic();

// Integral of |f'| for the quadratic flux, for the Engquist-Osher
// half-sum identity EO(a,b) = (f(a)+f(b))/2 - (1/2) int_a^b |f'|.
double abs_prime_integral(double x) {
  return x <= 0.5 ? x - x * x : 0.5 - x + x * x;
}

double eo_oracle(double a, double b) {
  return 0.5 * (quad(a) + quad(b)) -
         0.5 * (abs_prime_integral(b) - abs_prime_integral(a));
}

// Brute-force Godunov: min over [a,b] for a <= b, max over [b,a] otherwise.
double godunov_oracle(double s, double a, double b, int samples = 10000) {
  const double lo = std::min(a, b), hi = std::max(a, b);
  double best = shifted_flux(quad, s, lo);
  for (int k = 1; k <= samples; ++k) {
    const double u = lo + (hi - lo) * k / samples;
    const double v = shifted_flux(quad, s, u);
    best = a <= b ? std::min(best, v) : std::max(best, v);
  }
  return best;
}

FluxModel custom_quadratic() {
  return FluxModel::custom([](double r) { return r * (1.0 - r); },
                           [](double r) { return 1.0 - 2.0 * r; }, 0.5, 2.0,
                           1.0);
}

}  // namespace

TEST_CASE("flux evaluation") {
  CHECK(eval_flux(quad, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(eval_flux(quad, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(eval_flux(quad, 0.8) == doctest::Approx(0.16).epsilon(1e-14));
  CHECK_THROWS_AS(eval_flux(quad, -0.01), std::domain_error);
  CHECK_THROWS_AS(eval_flux(quad, 1.01), std::domain_error);
  // 1e-12 slack is accepted
  CHECK_NOTHROW(eval_flux(quad, 1.0 + 5e-13));
  quad.validate();
  custom_quadratic().validate();
}

TEST_CASE("flux model invariants reject a convex profile") {
  const FluxModel bad =
      FluxModel::custom([](double r) { return r * r * (1.0 - r); },
                        [](double r) { return 2.0 * r - 3.0 * r * r; }, 2.0 / 3.0,
                        0.5, 1.0);
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("shifted flux and entropy flux") {
  CHECK(shifted_flux(quad, 0.0, 0.5) == doctest::Approx(0.25));
  CHECK(shifted_flux(quad, 0.3, 1.0) == doctest::Approx(-0.3));
  CHECK(shifted_flux(quad, 0.2, 0.4) == doctest::Approx(0.16));

  CHECK(entropy_flux(quad, 0.0, 0.3, 0.3) == 0.0);
  CHECK(entropy_flux(quad, 0.0, 0.8, 0.2) == doctest::Approx(0.0));
  CHECK(entropy_flux(quad, 0.0, 0.5, 0.2) == doctest::Approx(0.09));

  // sgn(a-b)(F_s(a)-F_s(b)) is symmetric under swapping the arguments,
  // like the Kruzhkov entropy it derives from
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double a = u(rng), b = u(rng), s = 2.0 * u(rng) - 1.0;
    CHECK(entropy_flux(quad, s, a, b) ==
          doctest::Approx(entropy_flux(quad, s, b, a)).epsilon(1e-13));
  }
}

TEST_CASE("constraint admissibility band") {
  CHECK(constraint_admissible(quad, 0.0, 0.1));
  CHECK_FALSE(constraint_admissible(quad, 0.0, 0.25));  // strict at max F_s
  CHECK_FALSE(constraint_admissible(quad, -0.1, 0.05)); // s<0 needs q >= -s
  CHECK(constraint_admissible(quad, -0.1, 0.1));
  CHECK_FALSE(constraint_admissible(quad, 0.0, -0.01));
}

TEST_CASE("germ couple roots") {
  const GermCouple g = germ_couple(quad, 0.0, 0.1);
  const double hat = 0.5 * (1.0 + std::sqrt(0.6));   // quadratic formula
  const double check = 0.5 * (1.0 - std::sqrt(0.6));
  CHECK(g.rho_hat == doctest::Approx(hat).epsilon(1e-14));
  CHECK(g.rho_check == doctest::Approx(check).epsilon(1e-14));
  CHECK(g.rho_hat > g.rho_check);

  const GermCouple degenerate = germ_couple(quad, 0.0, 0.25 - 1e-15);
  CHECK(degenerate.rho_hat == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(degenerate.rho_check == doctest::Approx(0.5).epsilon(1e-6));

  const GermCouple zero = germ_couple(quad, 0.0, 0.0);
  CHECK(zero.rho_hat == doctest::Approx(1.0));
  CHECK(zero.rho_check == doctest::Approx(0.0));

  CHECK_THROWS_AS(germ_couple(quad, 0.0, 0.25), NoRootError);
  CHECK_THROWS_AS(germ_couple(quad, -0.1, 0.05), InadmissibleConstraint);

  // F_s(rho_hat) = F_s(rho_check) = q for varied (s, q).
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FluxModel cust = custom_quadratic();
  for (int k = 0; k < 100; ++k) {
    const double s = 0.8 * u(rng);
    const double q = 0.98 * u(rng) * max_shifted_flux(quad, s);
    const GermCouple gc = germ_couple(quad, s, q);
    CHECK(shifted_flux(quad, s, gc.rho_hat) == doctest::Approx(q).epsilon(1e-11));
    CHECK(shifted_flux(quad, s, gc.rho_check) ==
          doctest::Approx(q).epsilon(1e-11));
    // bisection path agrees with the closed form
    const GermCouple gb = germ_couple(cust, s, q);
    CHECK(gb.rho_hat == doctest::Approx(gc.rho_hat).epsilon(1e-10));
    CHECK(gb.rho_check == doctest::Approx(gc.rho_check).epsilon(1e-10));
  }
}

TEST_CASE("remainder") {
  CHECK(remainder(quad, 0.0, 0.5, 0.1) == doctest::Approx(0.3));
  CHECK(remainder(quad, 0.0, 0.05, 0.1) == 0.0);
  CHECK(remainder(quad, 0.0, 0.0, 0.1) == 0.0);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double s = 0.8 * u(rng), kappa = u(rng);
    const double q = 0.98 * u(rng) * max_shifted_flux(quad, s);
    const double r = remainder(quad, s, kappa, q);
    CHECK(r >= 0.0);
    if (shifted_flux(quad, s, kappa) <= q) CHECK(r == 0.0);
    if (r == 0.0) CHECK(shifted_flux(quad, s, kappa) <= q + 1e-15);
  }
}

TEST_CASE("germ classification") {
  const double hat = 0.5 * (1.0 + std::sqrt(0.6));
  const double check = 0.5 * (1.0 - std::sqrt(0.6));
  CHECK(classify_germ(quad, 0.0, 0.1, hat, check) == GermClass::G1);
  CHECK(classify_germ(quad, 0.0, 0.1, 0.05, 0.05) == GermClass::G2);
  CHECK(classify_germ(quad, 0.0, 0.1, 0.2, 0.8) == GermClass::NotInGerm);
  CHECK(classify_germ(quad, 0.0, 0.1, check, hat) == GermClass::G3);
  CHECK(classify_germ(quad, 0.0, 0.1, 0.9, 0.1) == GermClass::NotInGerm);

  // the couple itself classifies as G1 for sampled (s,q)
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double s = 0.8 * u(rng);
    const double q = 0.95 * u(rng) * max_shifted_flux(quad, s);
    const GermCouple g = germ_couple(quad, s, q);
    CHECK(classify_germ(quad, s, q, g.rho_hat, g.rho_check) == GermClass::G1);
  }
}

TEST_CASE("engquist-osher flux") {
  CHECK(engquist_osher(quad, 0.5, 0.5) == doctest::Approx(0.25));
  CHECK(engquist_osher(quad, 0.2, 0.8) == doctest::Approx(0.07));
  CHECK(engquist_osher(quad, 0.8, 0.2) == doctest::Approx(0.25));

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng);
    CHECK(std::abs(engquist_osher(quad, v, v) - quad(v)) <= 1e-12);
  }
  for (int k = 0; k < 500; ++k) {
    const double a = u(rng), b = u(rng);
    CHECK(engquist_osher(quad, a, b) ==
          doctest::Approx(eo_oracle(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("godunov flux of the shifted profile") {
  CHECK(godunov_shifted(quad, 0.0, 0.8, 0.2) == doctest::Approx(0.25));
  CHECK(godunov_shifted(quad, 0.0, 0.1, 0.9) == doctest::Approx(0.09));
  CHECK(godunov_shifted(quad, 0.0, 0.3, 0.3) == doctest::Approx(0.21));

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng), s = 1.6 * u(rng) - 0.4;
    CHECK(std::abs(godunov_shifted(quad, s, v, v) - shifted_flux(quad, s, v)) <=
          1e-12);
  }
  for (int k = 0; k < 200; ++k) {
    const double a = u(rng), b = u(rng), s = 0.8 * u(rng);
    CHECK(godunov_shifted(quad, s, a, b) ==
          doctest::Approx(godunov_oracle(s, a, b)).epsilon(1e-6));
  }
}

TEST_CASE("monotonicity of the numerical fluxes") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double h = 1e-6;
  for (int k = 0; k < 2000; ++k) {
    const double a = 0.999 * u(rng), b = 0.999 * u(rng), s = 0.8 * u(rng);
    CHECK(engquist_osher(quad, a + h, b) - engquist_osher(quad, a, b) >=
          -1e-12);
    CHECK(engquist_osher(quad, a, b + h) - engquist_osher(quad, a, b) <=
          1e-12);
    CHECK(godunov_shifted(quad, s, a + h, b) -
              godunov_shifted(quad, s, a, b) >=
          -1e-12);
    CHECK(godunov_shifted(quad, s, a, b + h) -
              godunov_shifted(quad, s, a, b) <=
          1e-12);
  }
}

TEST_CASE("interface flux never exceeds the constraint") {
  CHECK(interface_flux(quad, 0.0, 0.1, 0.8, 0.2) == doctest::Approx(0.1));
  CHECK(interface_flux(quad, 0.0, 0.1, 0.05, 0.05) == doctest::Approx(0.0475));
  CHECK(interface_flux(quad, 0.0, 0.0, 0.5, 0.5) == doctest::Approx(0.0));
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double s = 0.8 * u(rng);
    const double q = 0.98 * u(rng) * max_shifted_flux(quad, s);
    CHECK(interface_flux(quad, s, q, u(rng), u(rng)) <= q);
  }
}

TEST_CASE("germ dissipativity") {
  // Random members of G^1 u G^2 u G^3 for a handful of (s,q); checks the
  // Rankine-Hugoniot equality and Phi_s(k_l,c_l) >= Phi_s(k_r,c_r),
  // including the sign-table alternatives.
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  auto sample_member = [&](double s, double q, const GermCouple& g,
                           int* cls) -> std::pair<double, double> {
    const int pick = static_cast<int>(3.0 * u(rng)) % 3;
    *cls = pick;
    if (pick == 0) return {g.rho_hat, g.rho_check};
    if (pick == 1) {
      // constants with F_s <= q live outside ]rho_check, rho_hat[
      const double t = u(rng);
      const double kappa = u(rng) < 0.5 ? t * g.rho_check
                                        : g.rho_hat + t * (1.0 - g.rho_hat);
      return {kappa, kappa};
    }
    const double kl = u(rng) * g.rho_check;
    // conjugate root on the decreasing side of F_s
    const double b = 1.0 - s;
    const double kr = b - kl;
    return {kl, kr};
  };

  for (int combo = 0; combo < 8; ++combo) {
    const double s = 0.1 * combo;
    const double q = (0.2 + 0.7 * u(rng)) * max_shifted_flux(quad, s);
    const GermCouple g = germ_couple(quad, s, q);
    for (int k = 0; k < 300; ++k) {
      int ck, cc;
      const auto [kl, kr] = sample_member(s, q, g, &ck);
      const auto [cl, cr] = sample_member(s, q, g, &cc);
      CHECK(std::abs(shifted_flux(quad, s, kl) - shifted_flux(quad, s, kr)) <=
            1e-9);
      const double delta =
          entropy_flux(quad, s, kl, cl) - entropy_flux(quad, s, kr, cr);
      CHECK(delta >= -1e-10);
      // sign table: the difference is 0 or one of the listed gaps
      const double fk = shifted_flux(quad, s, kl);
      const double fc = shifted_flux(quad, s, cl);
      bool in_table = std::abs(delta) <= 1e-9;
      if (ck == 2 && cc == 0)
        in_table = in_table || std::abs(delta - 2.0 * (q - fk)) <= 1e-9;
      if (ck == 0 && cc == 2)
        in_table = in_table || std::abs(delta - 2.0 * (q - fc)) <= 1e-9;
      if ((ck == 2 && cc == 1) || (ck == 1 && cc == 2) ||
          (ck == 2 && cc == 2))
        in_table = in_table || std::abs(delta - 2.0 * std::abs(fc - fk)) <= 1e-9;
      CHECK(in_table);
    }
  }
}
