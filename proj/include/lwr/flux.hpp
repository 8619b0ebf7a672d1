#pragma once

#include <functional>

#include "lwr/errors.hpp"

namespace lwr {

enum class FluxKind { QuadraticLWR, Custom };

/// Bell-shaped flux f on [0,1]: f(0) = f(1) = 0, unique interior maximizer
/// rho_bar, uniformly concave (f'' <= -mu). Immutable after construction,
/// safe for concurrent read-only use.
class FluxModel {
 public:
  static FluxModel quadratic();

  /// Arbitrary concave flux given by callables. rho_bar must be the argmax,
  /// mu a uniform concavity constant and lipschitz a bound on |f'| on [0,1].
  static FluxModel custom(std::function<double(double)> f,
                          std::function<double(double)> f_prime,
                          double rho_bar, double mu, double lipschitz);

  double operator()(double rho) const {
    return kind_ == FluxKind::QuadraticLWR ? rho * (1.0 - rho) : f_(rho);
  }
  double prime(double rho) const {
    return kind_ == FluxKind::QuadraticLWR ? 1.0 - 2.0 * rho : f_prime_(rho);
  }

  FluxKind kind() const { return kind_; }
  double rho_bar() const { return rho_bar_; }
  double mu() const { return mu_; }
  double lipschitz() const { return lipschitz_; }

  /// Sampled invariant checks (endpoint zeros, bell shape, uniform
  /// concavity); throws ValidationError on failure.
  void validate() const;

 private:
  FluxModel() = default;
  FluxKind kind_ = FluxKind::QuadraticLWR;
  double rho_bar_ = 0.5;
  double mu_ = 2.0;
  double lipschitz_ = 1.0;
  std::function<double(double)> f_;
  std::function<double(double)> f_prime_;
};

/// f(rho); throws std::domain_error if rho is outside [0,1] beyond 1e-12.
double eval_flux(const FluxModel& m, double rho);

/// F_s(rho) = f(rho) - s*rho, the flux in the frame moving at speed s.
double shifted_flux(const FluxModel& m, double s, double rho);

/// Kruzhkov entropy flux sgn(a-b) * (F_s(a) - F_s(b)).
double entropy_flux(const FluxModel& m, double s, double a, double b);

/// Maximizer of F_s clamped to [0,1].
double shifted_argmax(const FluxModel& m, double s);

/// max of F_s over [0,1].
double max_shifted_flux(const FluxModel& m, double s);

/// Admissibility band for the constraint level: q in [0, max F_s[ when
/// s >= 0, q in [-s, max F_s[ when s < 0.
bool constraint_admissible(const FluxModel& m, double s, double q);

struct GermCouple {
  double rho_hat;    // larger root of F_s = q
  double rho_check;  // smaller root
  double s;
  double q;
};

/// The two solutions of F_s(rho) = q in [0,1] with rho_hat > rho_check.
/// Closed-form roots for the quadratic flux, bisection otherwise.
GermCouple germ_couple(const FluxModel& m, double s, double q);

/// Entropy remainder 2 * max(F_s(kappa) - q, 0).
double remainder(const FluxModel& m, double s, double kappa, double q);

enum class GermClass { G1, G2, G3, NotInGerm };

/// Classify a trace pair against the admissibility germ. Membership is
/// tested with absolute tolerance `tol` on flux equalities.
GermClass classify_germ(const FluxModel& m, double s, double q, double k_l,
                        double k_r, double tol = 1e-9);

/// Engquist-Osher flux q_+(a) + q_-(b) with
/// q_+(a) = f(a ^ rho_bar) - f(rho_bar)/2, q_-(b) = f(b v rho_bar) - f(rho_bar)/2.
double engquist_osher(const FluxModel& m, double a, double b);

/// Exact Godunov flux of the concave shifted flux F_s:
/// min(F_s(a ^ theta_s), F_s(b v theta_s)) with theta_s the clamped argmax.
double godunov_shifted(const FluxModel& m, double s, double a, double b);

/// Constrained interface flux min(God^s(a,b), q).
double interface_flux(const FluxModel& m, double s, double q, double a,
                      double b);

}  // namespace lwr
