#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pairfluid/diagnostics.hpp"
#include "pairfluid/grid.hpp"
#include "pairfluid/physics.hpp"
#include "pairfluid/state.hpp"

namespace pairfluid {

// Largest allowed dt/dx; the normalized signal speed is bounded by c = 1.
inline constexpr double kCflMax = 0.5;

struct SolverOptions {
  // Exactly one of dt and cfl is used; cfl wins when neither is set.
  std::optional<double> dt;
  std::optional<double> cfl;
  double t_end = 1500.0;
  bool displacement_terms = true;
  bool bohm = false;
  double nu_h = 0.0;
  // Give the Ampere pair-creation current a "+" sign instead of the one
  // consistent with the Gauss law. Breaks charge conservation.
  bool paper_ampere_sign = false;
};

struct Derivatives {
  Field E;
  Field n_e;
  Field n_p;
  Field p_e;
  Field p_p;
};

// Semi-discrete right-hand side of the normalized 1D system.
//
//   dn_e/dt = -ddx(n_e p_e/g_e) + q0 + ddx(D_e) - a n_e n_p
//   dn_p/dt = -ddx(n_p p_p/g_p) + q0 - ddx(D_p) - a n_e n_p
//   dp_e/dt = -ddx(g_e) - E + ddx(U_Be)/2 - a n_p (p_e - p_p)
//   dp_p/dt = -ddx(g_p) + E + ddx(U_Bp)/2 - a n_e (p_p - p_e)
//   dE/dt   = w^2 (n_e p_e/g_e - n_p p_p/g_p - D_e - D_p)
//
// with D_s = g_s q0/E. Optional hyperdiffusion is added to the n and p rows.
// Since dE is built from the same fluxes the continuity rows differentiate,
// ddx(dE) == w^2 (dn_p - dn_e) up to rounding for any state.
//
// Throws NumericalBreakdown on non-positive density or non-finite values.
Derivatives rhs(const Grid1D& grid, const SimState& state, const PhysicsParams& params,
                const SolverOptions& opts);

// Classical fourth-order Runge-Kutta step. Requires 0 < dt <= kCflMax * dx.
SimState rk4_step(const Grid1D& grid, const SimState& state, double dt,
                  const PhysicsParams& params, const SolverOptions& opts);

// Throws NumericalBreakdown unless every field is finite and both densities
// are strictly positive.
void check_health(const SimState& state);

// Time step and step count actually used for a run: the nominal step
// (dt, or cfl * dx) is shrunk so that an integer number of equal steps lands
// exactly on t_end.
struct StepPlan {
  double dt = 0.0;
  std::size_t steps = 0;
};
StepPlan plan_steps(const Grid1D& grid, const SolverOptions& opts);

enum class InitialKind { paper_gaussian, sine, uniform, file };

struct InitialCondition {
  InitialKind kind = InitialKind::paper_gaussian;
  double L = 6000.0;
  double base_e = 1.01;
  double base_p = 0.01;
  double amplitude = 2.0;
  double epsilon = 1e-6;
  int mode = 1;
  double p_e = 0.0;
  double p_p = 0.0;
  std::string file; // snapshot CSV for InitialKind::file
};

// Builds densities and momenta for the requested kind, then E from the
// periodic Gauss law.
//   paper_gaussian: n_e = base_e + amplitude (x/L) exp(-x^2/L^2), n_p = base_p
//   sine:           n_e = base_e + epsilon sin(k x), k = mode pi / X, n_p = base_p
//   uniform:        n_e = base_e, n_p = base_p
//   file:           n_e, n_p, p_e, p_p read from a snapshot CSV
// Uniform momenta p_e, p_p are applied to all analytic kinds.
SimState initial_condition(const Grid1D& grid, const PhysicsParams& params,
                           const InitialCondition& ic);

struct RunConfig;

// Receives diagnostics as the run progresses; implementations write files.
class RunObserver {
public:
  virtual ~RunObserver() = default;
  virtual void on_record(const SeriesRecord& record) = 0;
  virtual void on_snapshot(const Grid1D& grid, const SimState& state, std::size_t index) = 0;
};

struct RunResult {
  SimState final_state;
  std::vector<SeriesRecord> records;
  std::size_t steps_taken = 0;
  std::size_t snapshots = 0;
  double dt = 0.0;
  // Set when the run stopped early on a NumericalBreakdown.
  std::optional<std::string> breakdown;
};

// Initializes the state, steps to t_end and reports a SeriesRecord every
// series_every steps and a snapshot every snapshot_every steps (0 disables
// snapshots). The initial and final states are always reported. A numerical
// breakdown ends the run early; everything gathered so far is still returned.
RunResult run(const RunConfig& config, RunObserver* observer = nullptr);

} // namespace pairfluid
