#include "lwr/riemann.hpp"

#include <cmath>

namespace lwr {

namespace {

// Inverse of the strictly decreasing f' on [0,1].
double inverse_prime(const FluxModel& m, double xi) {
  if (m.kind() == FluxKind::QuadraticLWR) return 0.5 * (1.0 - xi);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (m.prime(mid) > xi ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double classical_riemann(const FluxModel& m, double rho_l, double rho_r,
                         double xi) {
  if (rho_l == rho_r) return rho_l;
  if (rho_l < rho_r) {
    const double sigma =
        (eval_flux(m, rho_r) - eval_flux(m, rho_l)) / (rho_r - rho_l);
    return xi < sigma ? rho_l : rho_r;
  }
  if (xi <= m.prime(rho_l)) return rho_l;
  if (xi >= m.prime(rho_r)) return rho_r;
  return inverse_prime(m, xi);
}

double exact_constrained_riemann(const FluxModel& m, double s, double q,
                                 double rho_l, double rho_r, double xi) {
  if (!constraint_admissible(m, s, q))
    throw InadmissibleConstraint("exact_constrained_riemann: (s,q) outside "
                                 "the admissible band");
  if (godunov_shifted(m, s, rho_l, rho_r) <= q)
    return classical_riemann(m, rho_l, rho_r, xi);
  const GermCouple g = germ_couple(m, s, q);
  return xi < s ? classical_riemann(m, rho_l, g.rho_hat, xi)
                : classical_riemann(m, g.rho_check, rho_r, xi);
}

}  // namespace lwr
