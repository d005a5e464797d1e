#pragma once

#include "pairfluid/grid.hpp"
#include "pairfluid/physics.hpp"
#include "pairfluid/state.hpp"

namespace pairfluid {

// One row of the time series written to series.csv.
struct SeriesRecord {
  double t = 0.0;
  double field_energy = 0.0;     // integral of E^2 / (2 w^2)
  double kinetic_e = 0.0;        // integral of n_e gamma_e
  double kinetic_p = 0.0;        // integral of n_p gamma_p
  double total_energy = 0.0;     // sum of the three above
  double total_energy_sub = 0.0; // total minus the rest energy 2 * 2X
  double delta_pairs = 0.0;
  double max_abs_E = 0.0;
  double max_gamma = 1.0;
  double gauss_residual = 0.0;
  double balance_rhs = 0.0;

  friend bool operator==(const SeriesRecord&, const SeriesRecord&) = default;
};

struct EnergyBreakdown {
  double field = 0.0;
  double kinetic_e = 0.0;
  double kinetic_p = 0.0;
  double total = 0.0;
  // total - integral of 2, i.e. with the rest energy of a neutral pair
  // background removed.
  double total_sub = 0.0;
};

EnergyBreakdown total_energy(const Grid1D& grid, const SimState& state, double omega_pe_sq);

// integral(n_e) - initial_N_e.
double pair_count_delta(const Grid1D& grid, const SimState& state, double initial_N_e);

// || ddx(E) - w^2 (1 - n_e + n_p) ||_inf
double gauss_residual(const Grid1D& grid, const SimState& state, double omega_pe_sq);

// Right-hand side of the approximate energy law,
//   -integral( q0/(2E) ddx(gamma_e^2 - gamma_p^2) ),
// which equals d(E_tot)/dt when the Ampere correction enters with a minus sign.
double energy_balance_rhs(const Grid1D& grid, const SimState& state,
                          const PhysicsParams& params);

SeriesRecord make_record(const Grid1D& grid, const SimState& state,
                         const PhysicsParams& params, double initial_N_e);

} // namespace pairfluid
