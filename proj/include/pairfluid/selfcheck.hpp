#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pairfluid/grid.hpp"
#include "pairfluid/physics.hpp"
#include "pairfluid/solver.hpp"
#include "pairfluid/state.hpp"

namespace pairfluid {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Built-in invariant suite behind `pairfluid check`: kernel parity and
// limits, operator convergence order, the discrete Ampere-Gauss identity on
// random states, and the Langmuir frequency.
std::vector<CheckResult> run_self_checks();

// Random smooth periodic state: each field is a sum of a few low Fourier
// modes. Densities stay in [0.3, 1.7], |E| <= e_max, |p| <= p_max.
SimState random_smooth_state(const Grid1D& grid, std::uint64_t seed, double e_max = 0.6,
                             double p_max = 5.0);

// Worst |ddx(dE) - w^2 (dn_p - dn_e)| over the grid, and the scale it
// should be compared with.
struct IdentityError {
  double error = 0.0;
  double scale = 0.0;
};
IdentityError ampere_gauss_mismatch(const Grid1D& grid, const SimState& state,
                                    const PhysicsParams& params, const SolverOptions& opts);

// Measures the oscillation period of a small sine perturbation by fitting the
// projected field signal s_n to the exact two-term recurrence of a damped
// sinusoid, s_{n+1} = c1 s_n + c2 s_{n-1}.
struct LangmuirSetup {
  double half_width = 4000.0;
  std::size_t cells = 256;
  double N0 = 0.2;
  double alpha = 1.0 / 137.0;
  double epsilon = 1e-6;
  double base_e = 1.01;
  double base_p = 0.01;
  double dt_over_dx = 0.5;
  double periods = 3.0;
};
struct LangmuirMeasurement {
  double period = 0.0;
  double expected = 0.0; // 2 pi / (w sqrt(base_e + base_p))
  double dt = 0.0;
  double relative_error() const { return (period - expected) / expected; }
};
LangmuirMeasurement measure_langmuir_period(const LangmuirSetup& setup);

} // namespace pairfluid
