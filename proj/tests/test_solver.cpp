#include <cmath>
#include <complex>
#include <numeric>

#include "doctest.h"
#include "pairfluid/config.hpp"
#include "pairfluid/errors.hpp"
#include "pairfluid/selfcheck.hpp"
#include "pairfluid/solver.hpp"

using namespace pairfluid;

namespace {

const PhysicsParams kParams = make_physics_params(0.2, 1.0 / 137.0);

SimState uniform_state(std::size_t m, double E, double ne, double np, double pe, double pp) {
  SimState s;
  s.E.assign(m, E);
  s.n_e.assign(m, ne);
  s.n_p.assign(m, np);
  s.p_e.assign(m, pe);
  s.p_p.assign(m, pp);
  return s;
}

SimState as_state(const Derivatives& d) {
  return SimState{0.0, d.E, d.n_e, d.n_p, d.p_e, d.p_p};
}

double l2(const Field& a) {
  return std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
}

double l2_diff(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

// Evolves a mode-1 sine perturbation for one Langmuir period in n steps and
// returns ||E(T) - E(0)|| / ||E(0)||.
double langmuir_return_error(std::size_t n) {
  const Grid1D grid(4000.0, 64);
  InitialCondition ic;
  ic.kind = InitialKind::sine;
  ic.epsilon = 1e-8;
  const SimState s0 = initial_condition(grid, kParams, ic);
  const double period = 2.0 * kPi / std::sqrt(kParams.omega_pe_sq * (ic.base_e + ic.base_p));
  const double dt = period / static_cast<double>(n);
  SolverOptions opts;
  SimState s = s0;
  for (std::size_t i = 0; i < n; ++i) s = rk4_step(grid, s, dt, kParams, opts);
  return l2_diff(s.E, s0.E) / l2(s0.E);
}

} // namespace

TEST_CASE("rhs of a quiescent neutral plasma vanishes") {
  const Grid1D grid(100.0, 32);
  const Derivatives d = rhs(grid, uniform_state(32, 0.0, 1.01, 0.01, 0.0, 0.0), kParams, {});
  for (const Field* f : {&d.E, &d.n_e, &d.n_p, &d.p_e, &d.p_p})
    for (double v : *f) CHECK(v == 0.0);
}

TEST_CASE("rhs in a uniform supercritical-scale field") {
  const Grid1D grid(100.0, 32);
  const Derivatives d = rhs(grid, uniform_state(32, 0.5, 1.0, 1.0, 0.0, 0.0), kParams, {});
  const double q0 = schwinger_rate_norm(0.5, 0.2);
  for (std::size_t j = 0; j < 32; ++j) {
    CHECK(d.p_e[j] == -0.5);
    CHECK(d.p_p[j] == 0.5);
    CHECK(d.n_e[j] == doctest::Approx(q0).epsilon(1e-14));
    CHECK(d.n_p[j] == doctest::Approx(2.33430e-3).epsilon(5e-6));
    CHECK(d.E[j] == doctest::Approx(-2.0 * kParams.omega_pe_sq * q0 / 0.5).epsilon(1e-14));
    CHECK(d.E[j] == doctest::Approx(-6.9055e-7).epsilon(1e-4));
  }

  SUBCASE("displacement terms off removes the Ampere correction") {
    SolverOptions opts;
    opts.displacement_terms = false;
    const Derivatives off = rhs(grid, uniform_state(32, 0.5, 1.0, 1.0, 0.0, 0.0), kParams, opts);
    for (double v : off.E) CHECK(v == 0.0);
    for (double v : off.n_e) CHECK(v == doctest::Approx(q0));
  }
}

TEST_CASE("discrete Ampere-Gauss identity holds for any state") {
  const Grid1D grid(300.0, 128);
  SolverOptions plain;
  SolverOptions quantum;
  quantum.bohm = true;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const SimState s = random_smooth_state(grid, seed);
    for (const SolverOptions* opts : {&plain, &quantum}) {
      const IdentityError err = ampere_gauss_mismatch(grid, s, kParams, *opts);
      REQUIRE(err.error <= 1e-13 * std::max(err.scale, 1.0));
    }
  }

  SUBCASE("hyperdiffusion keeps it on Gauss-consistent states") {
    SolverOptions filtered;
    filtered.nu_h = 0.3;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SimState s = random_smooth_state(grid, seed);
      for (double& n : s.n_e) n += 1.0;
      const double excess = integrate(grid, s.n_e) - grid.length();
      const double scale = excess / integrate(grid, s.n_p);
      for (double& n : s.n_p) n *= scale;
      s.E = poisson_init_E(grid, s.n_e, s.n_p, kParams.omega_pe_sq);
      const IdentityError err = ampere_gauss_mismatch(grid, s, kParams, filtered);
      REQUIRE(err.error <= 1e-12 * std::max(err.scale, 1.0));
    }
  }

  SUBCASE("the opposite Ampere sign breaks it") {
    SolverOptions flipped;
    flipped.paper_ampere_sign = true;
    const SimState s = random_smooth_state(grid, 7, 0.8);
    const IdentityError err = ampere_gauss_mismatch(grid, s, kParams, flipped);
    CHECK(err.error > 1e-8 * err.scale);
  }
}

TEST_CASE("reflection symmetry is exact") {
  const Grid1D grid(300.0, 128);
  SolverOptions opts;
  opts.bohm = true;
  opts.nu_h = 0.1;
  for (std::uint64_t seed = 11; seed <= 20; ++seed) {
    const SimState s = random_smooth_state(grid, seed);
    const SimState lhs = as_state(rhs(grid, mirrored(s), kParams, opts));
    const SimState rhs_m = mirrored(as_state(rhs(grid, s, kParams, opts)));
    REQUIRE(lhs == rhs_m);
    REQUIRE(rk4_step(grid, mirrored(s), 2.0, kParams, opts) ==
            mirrored(rk4_step(grid, s, 2.0, kParams, opts)));
  }
}

TEST_CASE("rk4_step") {
  const Grid1D grid(100.0, 32);

  SUBCASE("equilibrium is a fixed point") {
    const SimState s = uniform_state(32, 0.0, 1.01, 0.01, 0.0, 0.0);
    SimState next = rk4_step(grid, s, 1.0, kParams, {});
    CHECK(next.t == 1.0);
    next.t = 0.0;
    CHECK(next == s);
  }

  SUBCASE("uniform drift drives a uniform current") {
    const SimState s = uniform_state(32, 0.0, 1.01, 0.01, 0.3, 0.3);
    const Derivatives d = rhs(grid, s, kParams, {});
    const double v = 0.3 / lorentz_gamma(0.3);
    for (std::size_t j = 0; j < 32; ++j) {
      CHECK(d.E[j] == doctest::Approx(kParams.omega_pe_sq * (1.01 - 0.01) * v).epsilon(1e-14));
      CHECK(d.n_e[j] == 0.0);
      CHECK(d.p_e[j] == 0.0);
    }
    const SimState next = rk4_step(grid, s, 1.0, kParams, {});
    for (std::size_t j = 1; j < 32; ++j) {
      CHECK(next.E[j] == next.E[0]);
      CHECK(next.p_e[j] == next.p_e[0]);
      CHECK(next.n_e[j] == next.n_e[0]);
    }
    CHECK(next.E[0] > 0.0);
    CHECK(next.p_e[0] < 0.3);
  }

  SUBCASE("time step limits") {
    const SimState s = uniform_state(32, 0.0, 1.01, 0.01, 0.0, 0.0);
    CHECK_NOTHROW(rk4_step(grid, s, kCflMax * grid.dx(), kParams, {}));
    CHECK_THROWS_AS(rk4_step(grid, s, 0.51 * grid.dx(), kParams, {}), InvalidParameter);
    CHECK_THROWS_AS(rk4_step(grid, s, 0.0, kParams, {}), InvalidParameter);
    CHECK_THROWS_AS(rk4_step(grid, s, -1.0, kParams, {}), InvalidParameter);
  }

  SUBCASE("shape mismatch") {
    SimState s = uniform_state(32, 0.0, 1.01, 0.01, 0.0, 0.0);
    s.p_p.pop_back();
    CHECK_THROWS_AS(rk4_step(grid, s, 1.0, kParams, {}), InvalidState);
  }
}

TEST_CASE("Langmuir oscillation") {
  SUBCASE("field returns after one period") {
    CHECK(langmuir_return_error(128) <= 1e-6);
  }

  SUBCASE("error follows the RK4 amplification factor") {
    // Starting from rest, E(t) = E0 cos(wt), so after n steps of size
    // h = 2 pi / (w n) the error is |Re R(ih)^n - 1| with R the RK4
    // stability polynomial.
    for (std::size_t n : {16, 32, 64}) {
      const std::complex<double> z(0.0, 2.0 * kPi / static_cast<double>(n));
      const std::complex<double> amp = 1.0 + z + z * z / 2.0 + z * z * z / 6.0 + z * z * z * z / 24.0;
      const double expected = std::fabs(std::pow(amp, static_cast<double>(n)).real() - 1.0);
      CHECK(langmuir_return_error(n) == doctest::Approx(expected).epsilon(0.01));
    }
    CHECK(langmuir_return_error(16) / langmuir_return_error(32) == doctest::Approx(32.0).epsilon(0.05));
  }

  SUBCASE("fitted period") {
    const LangmuirMeasurement m = measure_langmuir_period({});
    CHECK(std::fabs(m.relative_error()) < 0.01);
    CHECK(m.expected == doctest::Approx(2.0 * kPi / std::sqrt(kParams.omega_pe_sq * 1.02)));
  }
}

TEST_CASE("numerical breakdown") {
  SimState s = uniform_state(16, 0.0, 1.01, 0.01, 0.0, 0.0);
  s.t = 3.5;
  s.n_e[5] = -0.1;
  try {
    check_health(s);
    FAIL("expected NumericalBreakdown");
  } catch (const NumericalBreakdown& e) {
    CHECK(e.time() == 3.5);
    CHECK(e.cell() == 5);
  }
  s.n_e[5] = 1.01;
  s.p_p[9] = std::nan("");
  CHECK_THROWS_AS(check_health(s), NumericalBreakdown);
  s.p_p[9] = 0.0;
  s.n_p[0] = 0.0;
  CHECK_THROWS_AS(rhs(Grid1D(10.0, 16), s, kParams, {}), NumericalBreakdown);
}

TEST_CASE("plan_steps") {
  const Grid1D grid(24000.0, 2048);
  SolverOptions opts;
  opts.cfl = 0.4;
  StepPlan plan = plan_steps(grid, opts);
  CHECK(plan.dt == 9.375);
  CHECK(plan.steps == 160);

  opts.t_end = 100.0;
  plan = plan_steps(grid, opts);
  CHECK(plan.steps == 11);
  CHECK(plan.dt * 11 == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(plan.dt <= 9.375);

  opts.cfl.reset();
  opts.dt = 2.5;
  opts.t_end = 10.0;
  plan = plan_steps(grid, opts);
  CHECK(plan.dt == 2.5);
  CHECK(plan.steps == 4);

  opts.t_end = 0.0;
  CHECK(plan_steps(grid, opts).steps == 0);
}

TEST_CASE("initial conditions") {
  const Grid1D grid(24000.0, 2048);

  SUBCASE("reference Gaussian perturbation") {
    const SimState s = initial_condition(grid, kParams, {});
    CHECK(s.t == 0.0);
    for (std::size_t j = 0; j < 2048; ++j) {
      const double u = grid.x(j) / 6000.0;
      REQUIRE(s.n_e[j] == doctest::Approx(1.01 + 2.0 * u * std::exp(-u * u)).epsilon(1e-15));
      REQUIRE(s.n_p[j] == 0.01);
      REQUIRE(s.p_e[j] == 0.0);
    }
    CHECK(gauss_residual(grid, s, kParams.omega_pe_sq) <= 1e-12);
    const double emax = *std::max_element(s.E.begin(), s.E.end());
    CHECK(emax == doctest::Approx(0.44374).epsilon(2e-5));
    CHECK(emax < 0.5);
  }

  SUBCASE("uniform with drift") {
    InitialCondition ic;
    ic.kind = InitialKind::uniform;
    ic.p_e = 0.2;
    ic.p_p = -0.1;
    const SimState s = initial_condition(Grid1D(10.0, 16), kParams, ic);
    for (std::size_t j = 0; j < 16; ++j) {
      CHECK(std::fabs(s.E[j]) < 1e-18);
      CHECK(s.p_e[j] == 0.2);
      CHECK(s.p_p[j] == -0.1);
    }
  }

  SUBCASE("non-neutral background is rejected") {
    InitialCondition ic;
    ic.kind = InitialKind::uniform;
    ic.base_p = 0.5;
    CHECK_THROWS_AS(initial_condition(Grid1D(10.0, 16), kParams, ic), ChargeImbalance);
  }
}

TEST_CASE("run") {
  RunConfig config;
  config.grid.half_width = 2000.0;
  config.grid.cells = 128;
  config.solver.cfl = 0.4;

  SUBCASE("zero duration") {
    config.solver.t_end = 0.0;
    const RunResult r = run(config);
    CHECK(r.steps_taken == 0);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].t == 0.0);
    CHECK(r.final_state == initial_condition(config.make_grid(), config.physics_params(), config.ic));
    CHECK_FALSE(r.breakdown);
  }

  SUBCASE("record cadence") {
    config.ic.kind = InitialKind::sine;
    config.solver.t_end = 100.0;
    config.output.series_every = 3;
    const RunResult r = run(config);
    const StepPlan plan = plan_steps(config.make_grid(), config.solver);
    CHECK(r.steps_taken == plan.steps);
    CHECK(r.records.front().t == 0.0);
    CHECK(r.records.back().t == 100.0);
    CHECK(r.final_state.t == 100.0);
    CHECK(r.records.size() == plan.steps / 3 + 1 + (plan.steps % 3 != 0 ? 1 : 0));
  }

  SUBCASE("recombination removes pairs") {
    config.ic.kind = InitialKind::uniform;
    config.ic.base_e = 1.5;
    config.ic.base_p = 0.5;
    config.physics.a = 0.01;
    config.solver.t_end = 50.0;
    const RunResult r = run(config);
    REQUIRE(r.records.size() > 2);
    for (std::size_t i = 1; i < r.records.size(); ++i)
      CHECK(r.records[i].delta_pairs < r.records[i - 1].delta_pairs);
    for (std::size_t j = 0; j < 128; ++j)
      CHECK(r.final_state.n_e[j] - r.final_state.n_p[j] == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("created electrons and positrons balance") {
    config.grid.half_width = 24000.0;
    config.grid.cells = 256;
    config.solver.t_end = 200.0;
    const Grid1D grid = config.make_grid();
    const SimState s0 = initial_condition(grid, config.physics_params(), config.ic);
    const RunResult r = run(config);
    REQUIRE_FALSE(r.breakdown);
    const double de = integrate(grid, r.final_state.n_e) - integrate(grid, s0.n_e);
    const double dp = integrate(grid, r.final_state.n_p) - integrate(grid, s0.n_p);
    CHECK(de > 0.0);
    CHECK(de == doctest::Approx(dp).epsilon(1e-9));
  }
}
