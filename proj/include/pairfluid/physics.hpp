#pragma once

// Pointwise physics of the pair-creating two-fluid plasma.
//
// Normalized units throughout: lengths in Compton wavelengths
// lambda = hbar/(m_e c), times in tau = hbar/(m_e c^2), momenta in m_e c,
// electric fields in the critical field E_crit = m_e^2 c^3/(e hbar) and
// densities in the immobile ion background density n0.

namespace pairfluid {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kAlphaCodata = 7.2973525693e-3;
inline constexpr double kDefaultEpsField = 1e-8;

// CODATA 2018 values (SI). c, e and h are exact by definition of the SI.
namespace si {
inline constexpr double c = 299792458.0;                 // m/s
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double electron_mass = 9.1093837015e-31; // kg
inline constexpr double elementary_charge = 1.602176634e-19; // C

// E_crit = m_e^2 c^3 / (e hbar), V/m.
double critical_field();
// lambda = hbar / (m_e c), m.
double compton_wavelength();
// tau = hbar / (m_e c^2), s.
double compton_time();
} // namespace si

struct PhysicsParams {
  double N0 = 0.2;
  double alpha = kAlphaCodata;
  double omega_pe_sq = 0.0; // derived, see make_physics_params
  double a = 0.0;
  double eps_field = kDefaultEpsField;
};

// Validates the inputs and fills in omega_pe_sq. Throws InvalidParameter.
PhysicsParams make_physics_params(double N0, double alpha, double a = 0.0,
                                  double eps_field = kDefaultEpsField);

// sqrt(2 alpha N0) / (2 pi).
double derived_plasma_frequency(double N0, double alpha);

// Normalized Schwinger rate q0 = (E^2/N0) exp(-pi/|E|).
// Exactly 0 for |E| < eps_field and wherever the exponential underflows.
double schwinger_rate_norm(double E, double N0, double eps_field = kDefaultEpsField);

// Schwinger rate in pairs per m^3 per s for a field in V/m:
// c/((2 pi)^3 lambda^4) (E/E_crit)^2 exp(-pi E_crit/|E|).
double schwinger_rate_si(double field);

// Factor converting a normalized rate (units n0/tau) into SI:
// n0/tau = N0 / ((2 pi)^3 lambda^3 tau).
double rate_unit_si(double N0);

// sqrt(1 + p^2).
double lorentz_gamma(double p);

// gamma q0(E) / E = gamma (E/N0) exp(-pi/|E|). Odd in E; 0 for |E| < eps_field.
double displacement_flux(double E, double gamma, double N0,
                         double eps_field = kDefaultEpsField);

// a n_e n_p.
double recombination_loss(double n_e, double n_p, double a);

// -a n_other (p_self - p_other).
double recombination_momentum_exchange(double p_self, double p_other, double n_other,
                                       double a);

} // namespace pairfluid
