#include "pairfluid/physics.hpp"

#include <cmath>

#include "pairfluid/errors.hpp"

namespace pairfluid {

namespace si {

double critical_field() {
  return electron_mass * electron_mass * c * c * c / (elementary_charge * hbar);
}

double compton_wavelength() { return hbar / (electron_mass * c); }

double compton_time() { return hbar / (electron_mass * c * c); }

} // namespace si

namespace {

// exp(-pi/|E|) with the small-field guard. Returns 0 when the exponential
// would underflow as well, so callers never see denormals.
double suppression(double E, double eps_field) {
  if (std::isnan(E)) throw InvalidState("electric field is NaN");
  const double mag = std::fabs(E);
  if (mag < eps_field) return 0.0;
  const double exponent = -kPi / mag;
  // exp(x) leaves the normal range below about -708.
  if (exponent < -708.0) return 0.0;
  return std::exp(exponent);
}

} // namespace

PhysicsParams make_physics_params(double N0, double alpha, double a, double eps_field) {
  if (!(N0 > 0.0) || !std::isfinite(N0))
    throw InvalidParameter("N0 must be positive and finite");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidParameter("alpha must be positive and finite");
  if (!(a >= 0.0) || !std::isfinite(a))
    throw InvalidParameter("recombination coefficient a must be non-negative");
  if (!(eps_field > 0.0) || !std::isfinite(eps_field))
    throw InvalidParameter("eps_field must be positive");
  PhysicsParams p;
  p.N0 = N0;
  p.alpha = alpha;
  p.a = a;
  p.eps_field = eps_field;
  const double w = derived_plasma_frequency(N0, alpha);
  p.omega_pe_sq = w * w;
  return p;
}

double derived_plasma_frequency(double N0, double alpha) {
  if (!(N0 > 0.0)) throw InvalidParameter("N0 must be positive");
  if (!(alpha > 0.0)) throw InvalidParameter("alpha must be positive");
  return std::sqrt(2.0 * alpha * N0) / (2.0 * kPi);
}

double schwinger_rate_norm(double E, double N0, double eps_field) {
  const double s = suppression(E, eps_field);
  if (s == 0.0) return 0.0;
  return (E * E / N0) * s;
}

double schwinger_rate_si(double field) {
  if (std::isnan(field)) throw InvalidState("electric field is NaN");
  if (field == 0.0) return 0.0;
  const double e_crit = si::critical_field();
  const double lambda = si::compton_wavelength();
  const double ratio = field / e_crit;
  const double exponent = -kPi / std::fabs(ratio);
  if (exponent < -708.0) return 0.0;
  const double l2 = lambda * lambda;
  const double prefactor = si::c / (8.0 * kPi * kPi * kPi * l2 * l2);
  return prefactor * ratio * ratio * std::exp(exponent);
}

double rate_unit_si(double N0) {
  const double lambda = si::compton_wavelength();
  return N0 / (8.0 * kPi * kPi * kPi * lambda * lambda * lambda * si::compton_time());
}

double lorentz_gamma(double p) { return std::sqrt(1.0 + p * p); }

double displacement_flux(double E, double gamma, double N0, double eps_field) {
  if (std::isnan(gamma)) throw InvalidState("gamma is NaN");
  const double s = suppression(E, eps_field);
  if (s == 0.0) return 0.0;
  return gamma * (E / N0) * s;
}

double recombination_loss(double n_e, double n_p, double a) {
  if (n_e < 0.0 || n_p < 0.0) throw InvalidState("negative density in recombination term");
  return a * n_e * n_p;
}

double recombination_momentum_exchange(double p_self, double p_other, double n_other,
                                       double a) {
  if (n_other < 0.0) throw InvalidState("negative density in recombination term");
  return -a * n_other * (p_self - p_other);
}

} // namespace pairfluid
