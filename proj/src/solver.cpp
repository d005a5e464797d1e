#include "pairfluid/solver.hpp"

#include <cmath>
#include <string>

#include "pairfluid/config.hpp"
#include "pairfluid/errors.hpp"
#include "pairfluid/io.hpp"

namespace pairfluid {

namespace {

void check_finite(const Field& f, const char* name, double t) {
  for (std::size_t j = 0; j < f.size(); ++j)
    if (!std::isfinite(f[j]))
      throw NumericalBreakdown(std::string("non-finite ") + name, t, j);
}

void check_positive(const Field& f, const char* name, double t) {
  for (std::size_t j = 0; j < f.size(); ++j)
    if (!(f[j] > 0.0)) throw NumericalBreakdown(std::string("non-positive ") + name, t, j);
}

// out = base + h * k, field by field.
SimState axpy(const SimState& base, double h, const Derivatives& k) {
  SimState out = base;
  const std::size_t m = base.E.size();
  for (std::size_t j = 0; j < m; ++j) {
    out.E[j] += h * k.E[j];
    out.n_e[j] += h * k.n_e[j];
    out.n_p[j] += h * k.n_p[j];
    out.p_e[j] += h * k.p_e[j];
    out.p_p[j] += h * k.p_p[j];
  }
  return out;
}

} // namespace

void check_health(const SimState& state) {
  check_finite(state.E, "E", state.t);
  check_finite(state.n_e, "n_e", state.t);
  check_finite(state.n_p, "n_p", state.t);
  check_finite(state.p_e, "p_e", state.t);
  check_finite(state.p_p, "p_p", state.t);
  check_positive(state.n_e, "n_e", state.t);
  check_positive(state.n_p, "n_p", state.t);
}

Derivatives rhs(const Grid1D& grid, const SimState& state, const PhysicsParams& params,
                const SolverOptions& opts) {
  check_shape(grid, state);
  check_health(state);

  const std::size_t m = grid.cells();
  const double a = params.a;

  Field gamma_e(m), gamma_p(m);
  Field flux_e(m), flux_p(m);   // n p / gamma, displacement folded in below
  Field q0(m), disp_e(m), disp_p(m);
  for (std::size_t j = 0; j < m; ++j) {
    gamma_e[j] = lorentz_gamma(state.p_e[j]);
    gamma_p[j] = lorentz_gamma(state.p_p[j]);
    q0[j] = schwinger_rate_norm(state.E[j], params.N0, params.eps_field);
    if (opts.displacement_terms) {
      disp_e[j] = displacement_flux(state.E[j], gamma_e[j], params.N0, params.eps_field);
      disp_p[j] = displacement_flux(state.E[j], gamma_p[j], params.N0, params.eps_field);
    } else {
      disp_e[j] = 0.0;
      disp_p[j] = 0.0;
    }
  }

  // Total number fluxes: advection minus the displacement source written in
  // flux form, so both continuity rows and Ampere share one set of numbers.
  Field current(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double adv_e = state.n_e[j] * state.p_e[j] / gamma_e[j];
    const double adv_p = state.n_p[j] * state.p_p[j] / gamma_p[j];
    flux_e[j] = adv_e - disp_e[j];
    flux_p[j] = adv_p + disp_p[j];
    current[j] = opts.paper_ampere_sign ? adv_e - adv_p + (disp_e[j] + disp_p[j])
                                        : flux_e[j] - flux_p[j];
  }

  Derivatives d;
  d.n_e = ddx(grid, flux_e);
  d.n_p = ddx(grid, flux_p);
  d.p_e = ddx(grid, gamma_e);
  d.p_p = ddx(grid, gamma_p);
  d.E.resize(m);

  for (std::size_t j = 0; j < m; ++j) {
    const double loss = a == 0.0 ? 0.0 : recombination_loss(state.n_e[j], state.n_p[j], a);
    d.n_e[j] = -d.n_e[j] + q0[j] - loss;
    d.n_p[j] = -d.n_p[j] + q0[j] - loss;
    d.p_e[j] = -d.p_e[j] - state.E[j];
    d.p_p[j] = -d.p_p[j] + state.E[j];
    if (a != 0.0) {
      d.p_e[j] += recombination_momentum_exchange(state.p_e[j], state.p_p[j], state.n_p[j], a);
      d.p_p[j] += recombination_momentum_exchange(state.p_p[j], state.p_e[j], state.n_e[j], a);
    }
    d.E[j] = params.omega_pe_sq * current[j];
  }

  if (opts.bohm) {
    const Field force_e = ddx(grid, bohm_potential(grid, state.n_e, gamma_e));
    const Field force_p = ddx(grid, bohm_potential(grid, state.n_p, gamma_p));
    for (std::size_t j = 0; j < m; ++j) {
      d.p_e[j] += 0.5 * force_e[j];
      d.p_p[j] += 0.5 * force_p[j];
    }
  }

  if (opts.nu_h > 0.0) {
    auto add = [&](Field& target, const Field& source) {
      const Field h = hyperdiffusion(grid, source, opts.nu_h);
      for (std::size_t j = 0; j < m; ++j) target[j] += h[j];
    };
    // E gets the same filter: ddx commutes with the fourth difference, so
    // the Gauss residual is damped rather than driven.
    add(d.E, state.E);
    add(d.n_e, state.n_e);
    add(d.n_p, state.n_p);
    add(d.p_e, state.p_e);
    add(d.p_p, state.p_p);
  }

  check_finite(d.E, "dE/dt", state.t);
  check_finite(d.n_e, "dn_e/dt", state.t);
  check_finite(d.n_p, "dn_p/dt", state.t);
  check_finite(d.p_e, "dp_e/dt", state.t);
  check_finite(d.p_p, "dp_p/dt", state.t);
  return d;
}

SimState rk4_step(const Grid1D& grid, const SimState& state, double dt,
                  const PhysicsParams& params, const SolverOptions& opts) {
  if (!(dt > 0.0) || dt > kCflMax * grid.dx() * (1.0 + 1e-12))
    throw InvalidParameter("time step must satisfy 0 < dt <= 0.5 dx");

  const Derivatives k1 = rhs(grid, state, params, opts);
  SimState stage = axpy(state, 0.5 * dt, k1);
  stage.t = state.t + 0.5 * dt;
  const Derivatives k2 = rhs(grid, stage, params, opts);
  stage = axpy(state, 0.5 * dt, k2);
  const Derivatives k3 = rhs(grid, stage, params, opts);
  stage = axpy(state, dt, k3);
  stage.t = state.t + dt;
  const Derivatives k4 = rhs(grid, stage, params, opts);

  SimState next = state;
  next.t = state.t + dt;
  const double w = dt / 6.0;
  const std::size_t m = grid.cells();
  auto combine = [&](Field& y, const Field& a, const Field& b, const Field& c, const Field& e) {
    for (std::size_t j = 0; j < m; ++j) y[j] += w * (a[j] + 2.0 * b[j] + 2.0 * c[j] + e[j]);
  };
  combine(next.E, k1.E, k2.E, k3.E, k4.E);
  combine(next.n_e, k1.n_e, k2.n_e, k3.n_e, k4.n_e);
  combine(next.n_p, k1.n_p, k2.n_p, k3.n_p, k4.n_p);
  combine(next.p_e, k1.p_e, k2.p_e, k3.p_e, k4.p_e);
  combine(next.p_p, k1.p_p, k2.p_p, k3.p_p, k4.p_p);
  check_health(next);
  return next;
}

StepPlan plan_steps(const Grid1D& grid, const SolverOptions& opts) {
  if (opts.dt && opts.cfl) throw InvalidParameter("dt and cfl are mutually exclusive");
  const double nominal = opts.dt ? *opts.dt : opts.cfl.value_or(0.4) * grid.dx();
  if (!(nominal > 0.0)) throw InvalidParameter("time step must be positive");
  if (nominal > kCflMax * grid.dx() * (1.0 + 1e-12))
    throw InvalidParameter("time step exceeds the CFL limit 0.5 dx");
  if (!(opts.t_end >= 0.0) || !std::isfinite(opts.t_end))
    throw InvalidParameter("t_end must be non-negative");
  StepPlan plan;
  if (opts.t_end == 0.0) {
    plan.dt = nominal;
    plan.steps = 0;
    return plan;
  }
  // The relative slack keeps t_end/dt = 160.0000000001 from becoming 161.
  const double ratio = opts.t_end / nominal;
  plan.steps = static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12)));
  if (plan.steps == 0) plan.steps = 1;
  plan.dt = opts.t_end / static_cast<double>(plan.steps);
  return plan;
}

SimState initial_condition(const Grid1D& grid, const PhysicsParams& params,
                           const InitialCondition& ic) {
  const std::size_t m = grid.cells();
  SimState s;
  s.t = 0.0;
  s.n_e.assign(m, ic.base_e);
  s.n_p.assign(m, ic.base_p);
  s.p_e.assign(m, ic.p_e);
  s.p_p.assign(m, ic.p_p);

  switch (ic.kind) {
  case InitialKind::paper_gaussian: {
    if (!(ic.L > 0.0)) throw InvalidParameter("ic.L must be positive");
    for (std::size_t j = 0; j < m; ++j) {
      const double u = grid.x(j) / ic.L;
      s.n_e[j] = ic.base_e + ic.amplitude * u * std::exp(-u * u);
    }
    break;
  }
  case InitialKind::sine: {
    if (ic.mode < 1) throw InvalidParameter("ic.mode must be a positive integer");
    const double k = kPi * static_cast<double>(ic.mode) / grid.half_width();
    for (std::size_t j = 0; j < m; ++j)
      s.n_e[j] = ic.base_e + ic.epsilon * std::sin(k * grid.x(j));
    break;
  }
  case InitialKind::uniform:
    break;
  case InitialKind::file: {
    const Snapshot snap = read_snapshot(ic.file);
    if (snap.x.size() != m)
      throw InvalidParameter("initial-condition file has " + std::to_string(snap.x.size()) +
                             " rows, grid has " + std::to_string(m) + " cells");
    s.n_e = snap.state.n_e;
    s.n_p = snap.state.n_p;
    s.p_e = snap.state.p_e;
    s.p_p = snap.state.p_p;
    break;
  }
  }

  for (std::size_t j = 0; j < m; ++j)
    if (!(s.n_e[j] > 0.0) || !(s.n_p[j] > 0.0))
      throw InvalidParameter("initial densities must be positive (cell " + std::to_string(j) +
                             ")");

  s.E = poisson_init_E(grid, s.n_e, s.n_p, params.omega_pe_sq);
  return s;
}

RunResult run(const RunConfig& config, RunObserver* observer) {
  validate(config);
  const PhysicsParams params = config.physics_params();
  const Grid1D grid = config.make_grid();
  const SolverOptions& opts = config.solver;
  const StepPlan plan = plan_steps(grid, opts);
  const std::size_t series_every = config.output.series_every;
  const std::size_t snapshot_every = config.output.snapshot_every;

  RunResult result;
  result.dt = plan.dt;
  SimState state = initial_condition(grid, params, config.ic);
  const double initial_N_e = integrate(grid, state.n_e);

  auto push_record = [&] {
    result.records.push_back(make_record(grid, state, params, initial_N_e));
    if (observer) observer->on_record(result.records.back());
  };
  auto push_snapshot = [&](std::size_t step) {
    ++result.snapshots;
    if (observer) observer->on_snapshot(grid, state, step);
  };
  bool record_current = false;
  bool snapshot_current = false;
  auto emit = [&](std::size_t step, bool last) {
    record_current = step % series_every == 0 || last;
    snapshot_current = snapshot_every > 0 && (step % snapshot_every == 0 || last);
    if (record_current) push_record();
    if (snapshot_current) push_snapshot(step);
  };

  emit(0, plan.steps == 0);
  for (std::size_t step = 1; step <= plan.steps; ++step) {
    try {
      state = rk4_step(grid, state, plan.dt, params, opts);
    } catch (const NumericalBreakdown& e) {
      result.breakdown = e.what();
      // Report the last healthy state so the output ends where the run did.
      if (!record_current) push_record();
      if (snapshot_every > 0 && !snapshot_current) push_snapshot(step - 1);
      break;
    }
    const bool last = step == plan.steps;
    state.t = last ? opts.t_end : static_cast<double>(step) * plan.dt;
    result.steps_taken = step;
    emit(step, last);
  }
  result.final_state = std::move(state);
  return result;
}

} // namespace pairfluid
