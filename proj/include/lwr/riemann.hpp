#pragma once

#include "lwr/flux.hpp"

namespace lwr {

/// Entropy solution of the classical Riemann problem for the concave flux,
/// evaluated at the self-similar coordinate xi = x/t. An upward jump is a
/// shock, a downward jump opens a rarefaction fan.
double classical_riemann(const FluxModel& m, double rho_l, double rho_r,
                         double xi);

/// Exact self-similar solution of the Riemann problem with the flux
/// constraint q along the line x = s*t. When the classical interface flux
/// exceeds q, the non-classical stationary-at-interface shock
/// (rho_hat, rho_check) is inserted and classical waves connect it to the
/// far fields; otherwise the classical solution applies.
double exact_constrained_riemann(const FluxModel& m, double s, double q,
                                 double rho_l, double rho_r, double xi);

}  // namespace lwr
