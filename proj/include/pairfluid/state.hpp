#pragma once

#include "pairfluid/grid.hpp"

namespace pairfluid {

// Fields of the 1D two-fluid system at time t. E in units of E_crit,
// densities in n0, momenta in m_e c. Gamma factors are derived, not stored.
struct SimState {
  double t = 0.0;
  Field E;
  Field n_e;
  Field n_p;
  Field p_e;
  Field p_p;

  friend bool operator==(const SimState&, const SimState&) = default;
};

// Throws InvalidState unless all five fields have grid.cells() entries.
void check_shape(const Grid1D& grid, const SimState& state);

// Reflection x -> -x: densities are even, E and momenta are odd.
SimState mirrored(const SimState& state);

} // namespace pairfluid
