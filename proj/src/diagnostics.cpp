#include "pairfluid/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "pairfluid/errors.hpp"

namespace pairfluid {

void check_shape(const Grid1D& grid, const SimState& state) {
  const std::size_t m = grid.cells();
  if (state.E.size() != m || state.n_e.size() != m || state.n_p.size() != m ||
      state.p_e.size() != m || state.p_p.size() != m)
    throw InvalidState("state fields do not match the grid size");
}

SimState mirrored(const SimState& state) {
  auto flip = [](const Field& f, double sign) {
    Field out(f.rbegin(), f.rend());
    if (sign < 0.0)
      for (double& v : out) v = -v;
    return out;
  };
  SimState out;
  out.t = state.t;
  out.E = flip(state.E, -1.0);
  out.n_e = flip(state.n_e, 1.0);
  out.n_p = flip(state.n_p, 1.0);
  out.p_e = flip(state.p_e, -1.0);
  out.p_p = flip(state.p_p, -1.0);
  return out;
}

EnergyBreakdown total_energy(const Grid1D& grid, const SimState& state, double omega_pe_sq) {
  check_shape(grid, state);
  const std::size_t m = grid.cells();
  Field field(m), kin_e(m), kin_p(m);
  for (std::size_t j = 0; j < m; ++j) {
    field[j] = state.E[j] * state.E[j] / (2.0 * omega_pe_sq);
    kin_e[j] = state.n_e[j] * lorentz_gamma(state.p_e[j]);
    kin_p[j] = state.n_p[j] * lorentz_gamma(state.p_p[j]);
  }
  EnergyBreakdown e;
  e.field = integrate(grid, field);
  e.kinetic_e = integrate(grid, kin_e);
  e.kinetic_p = integrate(grid, kin_p);
  e.total = e.kinetic_e + e.kinetic_p + e.field;
  e.total_sub = e.total - 2.0 * grid.length();
  return e;
}

double pair_count_delta(const Grid1D& grid, const SimState& state, double initial_N_e) {
  return integrate(grid, state.n_e) - initial_N_e;
}

double gauss_residual(const Grid1D& grid, const SimState& state, double omega_pe_sq) {
  check_shape(grid, state);
  const Field dE = ddx(grid, state.E);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.cells(); ++j) {
    const double charge = 1.0 - state.n_e[j] + state.n_p[j];
    worst = std::max(worst, std::fabs(dE[j] - omega_pe_sq * charge));
  }
  return worst;
}

double energy_balance_rhs(const Grid1D& grid, const SimState& state,
                          const PhysicsParams& params) {
  check_shape(grid, state);
  const std::size_t m = grid.cells();
  Field gamma_sq_diff(m);
  for (std::size_t j = 0; j < m; ++j)
    gamma_sq_diff[j] = state.p_e[j] * state.p_e[j] - state.p_p[j] * state.p_p[j];
  const Field slope = ddx(grid, gamma_sq_diff);
  Field integrand(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double half_q_over_E =
        0.5 * displacement_flux(state.E[j], 1.0, params.N0, params.eps_field);
    integrand[j] = half_q_over_E * slope[j];
  }
  return 0.0 - integrate(grid, integrand);
}

SeriesRecord make_record(const Grid1D& grid, const SimState& state,
                         const PhysicsParams& params, double initial_N_e) {
  const EnergyBreakdown e = total_energy(grid, state, params.omega_pe_sq);
  SeriesRecord r;
  r.t = state.t;
  r.field_energy = e.field;
  r.kinetic_e = e.kinetic_e;
  r.kinetic_p = e.kinetic_p;
  r.total_energy = e.total;
  r.total_energy_sub = e.total_sub;
  r.delta_pairs = pair_count_delta(grid, state, initial_N_e);
  r.max_abs_E = 0.0;
  r.max_gamma = 1.0;
  for (std::size_t j = 0; j < grid.cells(); ++j) {
    r.max_abs_E = std::max(r.max_abs_E, std::fabs(state.E[j]));
    r.max_gamma = std::max({r.max_gamma, lorentz_gamma(state.p_e[j]),
                            lorentz_gamma(state.p_p[j])});
  }
  r.gauss_residual = gauss_residual(grid, state, params.omega_pe_sq);
  r.balance_rhs = energy_balance_rhs(grid, state, params);
  return r;
}

} // namespace pairfluid
