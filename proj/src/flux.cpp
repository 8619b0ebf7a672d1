#include "lwr/flux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace lwr {

namespace {

constexpr double kDomainSlack = 1e-12;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Bisection for F_s(rho) = q on an interval where F_s is strictly monotone.
double bisect_shifted(const FluxModel& m, double s, double q, double lo,
                      double hi, bool increasing) {
  double flo = shifted_flux(m, s, lo) - q;
  double fhi = shifted_flux(m, s, hi) - q;
  if (!increasing) {
    std::swap(flo, fhi);
    std::swap(lo, hi);
  }
  if (flo > 0.0 || fhi < 0.0) {
    std::ostringstream os;
    os << "no root of F_s = q in bracket (s=" << s << ", q=" << q << ")";
    throw NoRootError(os.str());
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::abs(hi - lo) < 1e-12) return mid;
    if (shifted_flux(m, s, mid) - q <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FluxModel FluxModel::quadratic() {
  FluxModel m;
  m.kind_ = FluxKind::QuadraticLWR;
  m.rho_bar_ = 0.5;
  m.mu_ = 2.0;
  m.lipschitz_ = 1.0;
  return m;
}

FluxModel FluxModel::custom(std::function<double(double)> f,
                            std::function<double(double)> f_prime,
                            double rho_bar, double mu, double lipschitz) {
  FluxModel m;
  m.kind_ = FluxKind::Custom;
  m.f_ = std::move(f);
  m.f_prime_ = std::move(f_prime);
  m.rho_bar_ = rho_bar;
  m.mu_ = mu;
  m.lipschitz_ = lipschitz;
  return m;
}

void FluxModel::validate() const {
  const FluxModel& m = *this;
  if (!(rho_bar_ > 0.0 && rho_bar_ < 1.0))
    throw ValidationError("flux.rho_bar", "must lie strictly inside ]0,1[");
  if (!(mu_ > 0.0)) throw ValidationError("flux.mu", "must be positive");
  if (std::abs(m(0.0)) > 1e-12 || std::abs(m(1.0)) > 1e-12)
    throw ValidationError("flux", "f(0) and f(1) must vanish");
  // Sample at 1e-3 resolution: bell shape and uniform concavity.
  const int n = 1000;
  for (int i = 1; i < n; ++i) {
    const double rho = static_cast<double>(i) / n;
    if (std::abs(rho - rho_bar_) < 1e-9) continue;
    if (!(prime(rho) * (rho_bar_ - rho) > 0.0))
      throw ValidationError("flux", "f'(rho)(rho_bar - rho) > 0 fails");
    const double h = 0.5 / n;
    const double lo = std::max(0.0, rho - h), hi = std::min(1.0, rho + h);
    const double second = (prime(hi) - prime(lo)) / (hi - lo);
    if (second > -mu_ + 1e-9)
      throw ValidationError("flux", "uniform concavity f'' <= -mu fails");
  }
}

double eval_flux(const FluxModel& m, double rho) {
  if (rho < -kDomainSlack || rho > 1.0 + kDomainSlack) {
    std::ostringstream os;
    os << "density " << rho << " outside [0,1]";
    throw std::domain_error(os.str());
  }
  return m(clamp01(rho));
}

double shifted_flux(const FluxModel& m, double s, double rho) {
  return eval_flux(m, rho) - s * rho;
}

double entropy_flux(const FluxModel& m, double s, double a, double b) {
  if (a == b) return 0.0;
  const double sgn = a > b ? 1.0 : -1.0;
  return sgn * (shifted_flux(m, s, a) - shifted_flux(m, s, b));
}

double shifted_argmax(const FluxModel& m, double s) {
  if (m.kind() == FluxKind::QuadraticLWR) return clamp01(0.5 * (1.0 - s));
  // f' is strictly decreasing; solve f'(theta) = s.
  if (m.prime(0.0) <= s) return 0.0;
  if (m.prime(1.0) >= s) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (m.prime(mid) > s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double max_shifted_flux(const FluxModel& m, double s) {
  return shifted_flux(m, s, shifted_argmax(m, s));
}

bool constraint_admissible(const FluxModel& m, double s, double q) {
  const double q_min = s >= 0.0 ? 0.0 : -s;
  return q >= q_min && q < max_shifted_flux(m, s);
}

GermCouple germ_couple(const FluxModel& m, double s, double q) {
  const double q_min = s >= 0.0 ? 0.0 : -s;
  if (q < q_min) {
    std::ostringstream os;
    os << "constraint q=" << q << " below admissible band for s=" << s;
    throw InadmissibleConstraint(os.str());
  }
  const double q_max = max_shifted_flux(m, s);
  if (q >= q_max) {
    std::ostringstream os;
    os << "q=" << q << " >= max F_s=" << q_max << " (s=" << s << ")";
    throw NoRootError(os.str());
  }
  GermCouple g;
  g.s = s;
  g.q = q;
  if (m.kind() == FluxKind::QuadraticLWR) {
    // rho^2 - (1-s) rho + q = 0
    const double b = 1.0 - s;
    const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * q));
    g.rho_hat = clamp01(0.5 * (b + disc));
    g.rho_check = clamp01(0.5 * (b - disc));
  } else {
    const double theta = shifted_argmax(m, s);
    g.rho_check = bisect_shifted(m, s, q, 0.0, theta, true);
    g.rho_hat = bisect_shifted(m, s, q, theta, 1.0, false);
  }
  return g;
}

double remainder(const FluxModel& m, double s, double kappa, double q) {
  return 2.0 * std::max(shifted_flux(m, s, kappa) - q, 0.0);
}

GermClass classify_germ(const FluxModel& m, double s, double q, double k_l,
                        double k_r, double tol) {
  const double fl = shifted_flux(m, s, k_l);
  const double fr = shifted_flux(m, s, k_r);
  if (k_l > k_r && std::abs(fl - q) <= tol && std::abs(fr - q) <= tol)
    return GermClass::G1;
  if (std::abs(k_l - k_r) <= tol && fl <= q + tol) return GermClass::G2;
  if (k_l < k_r && std::abs(fl - fr) <= tol && fl <= q + tol)
    return GermClass::G3;
  return GermClass::NotInGerm;
}

double engquist_osher(const FluxModel& m, double a, double b) {
  const double rb = m.rho_bar();
  const double half = 0.5 * m(rb);
  const double qp = eval_flux(m, std::min(a, rb)) - half;
  const double qm = eval_flux(m, std::max(b, rb)) - half;
  return qp + qm;
}

double godunov_shifted(const FluxModel& m, double s, double a, double b) {
  const double theta = shifted_argmax(m, s);
  return std::min(shifted_flux(m, s, std::min(a, theta)),
                  shifted_flux(m, s, std::max(b, theta)));
}

double interface_flux(const FluxModel& m, double s, double q, double a,
                      double b) {
  return std::min(godunov_shifted(m, s, a, b), q);
}

}  // namespace lwr
