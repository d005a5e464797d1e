#include "pairfluid/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pairfluid/diagnostics.hpp"

namespace pairfluid {

namespace {

std::string describe(double value, const char* relation, double bound) {
  std::ostringstream os;
  os.precision(4);
  os << value << ' ' << relation << ' ' << bound;
  return os.str();
}

double sine_derivative_error(std::size_t cells, bool second) {
  const Grid1D grid(10.0, cells);
  const double k = kPi / grid.half_width();
  Field f(cells);
  for (std::size_t j = 0; j < cells; ++j) f[j] = std::sin(k * grid.x(j));
  const Field d = second ? d2dx2(grid, f) : ddx(grid, f);
  double worst = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    const double exact = second ? -k * k * std::sin(k * grid.x(j)) : k * std::cos(k * grid.x(j));
    worst = std::max(worst, std::fabs(d[j] - exact));
  }
  return worst;
}

CheckResult check_rate_parity() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> field(-3.0, 3.0);
  bool ok = true;
  for (int i = 0; i < 1000 && ok; ++i) {
    const double E = field(rng);
    const double q = schwinger_rate_norm(E, 0.2);
    ok = q >= 0.0 && q == schwinger_rate_norm(-E, 0.2) &&
         displacement_flux(E, 1.7, 0.2) == -displacement_flux(-E, 1.7, 0.2);
  }
  return {"rate parity (q0 even, flux odd, q0 >= 0)", ok, "1000 random fields"};
}

CheckResult check_rate_suppression() {
  double worst = 0.0;
  for (int i = 1; i <= 500; ++i) {
    const double E = 0.05 * i / 500.0;
    const double q = schwinger_rate_norm(E, 0.2);
    for (int n = 0; n <= 8; ++n) worst = std::max(worst, q / std::pow(E, n));
  }
  return {"rate suppression below |E| = 0.05", worst < 1e-10, describe(worst, "<", 1e-10)};
}

CheckResult check_rate_units() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ratio(0.02, 5.0);
  const double e_crit = si::critical_field();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eps = ratio(rng);
    const double N0 = 0.2;
    const double from_norm = schwinger_rate_norm(eps, N0) * rate_unit_si(N0);
    const double direct = schwinger_rate_si(eps * e_crit);
    worst = std::max(worst, std::fabs(from_norm - direct) / direct);
  }
  return {"SI and normalized rates agree", worst <= 1e-12, describe(worst, "<=", 1e-12)};
}

CheckResult check_convergence(bool second) {
  const double e64 = sine_derivative_error(64, second);
  const double e128 = sine_derivative_error(128, second);
  const double e256 = sine_derivative_error(256, second);
  const double r1 = e64 / e128;
  const double r2 = e128 / e256;
  const bool ok = r1 >= 15.0 && r2 >= 15.0;
  std::ostringstream os;
  os.precision(4);
  os << "error ratios " << r1 << ", " << r2 << " (need >= 15)";
  return {second ? "d2dx2 fourth-order convergence" : "ddx fourth-order convergence", ok,
          os.str()};
}

CheckResult check_discrete_divergence() {
  const Grid1D grid(50.0, 128);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SimState s = random_smooth_state(grid, seed);
    double scale = 0.0;
    for (double v : s.p_e) scale = std::max(scale, std::fabs(v));
    const double total = integrate(grid, ddx(grid, s.p_e));
    worst = std::max(worst, std::fabs(total) / (scale * grid.length() / grid.dx()));
  }
  return {"integral of ddx vanishes", worst <= 1e-14, describe(worst, "<=", 1e-14)};
}

CheckResult check_ampere_gauss() {
  const Grid1D grid(300.0, 256);
  const PhysicsParams params = make_physics_params(0.2, 1.0 / 137.0);
  SolverOptions opts;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SimState s = random_smooth_state(grid, 1000 + seed);
    const IdentityError e = ampere_gauss_mismatch(grid, s, params, opts);
    worst = std::max(worst, e.error / e.scale);
  }
  return {"Ampere-Gauss identity on 100 random states", worst <= 1e-13,
          describe(worst, "<=", 1e-13)};
}

CheckResult check_langmuir() {
  const LangmuirMeasurement m = measure_langmuir_period(LangmuirSetup{});
  const double err = std::fabs(m.relative_error());
  return {"Langmuir period 2 pi/(w sqrt(1.02))", err <= 0.01, describe(err, "<=", 0.01)};
}

} // namespace

SimState random_smooth_state(const Grid1D& grid, std::uint64_t seed, double e_max,
                             double p_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  const std::size_t m = grid.cells();
  const double k = kPi / grid.half_width();

  // Four low modes with weights summing to at most 1 in absolute value.
  auto smooth = [&](double offset, double amplitude) {
    double weights[4];
    double norm = 0.0;
    for (double& w : weights) {
      w = unit(rng);
      norm += std::fabs(w);
    }
    double phases[4];
    for (double& p : phases) p = phase(rng);
    Field f(m);
    for (std::size_t j = 0; j < m; ++j) {
      double v = 0.0;
      for (int mode = 0; mode < 4; ++mode)
        v += weights[mode] / norm * std::sin((mode + 1) * k * grid.x(j) + phases[mode]);
      f[j] = offset + amplitude * v;
    }
    return f;
  };

  SimState s;
  s.E = smooth(0.0, e_max);
  s.n_e = smooth(1.0, 0.7);
  s.n_p = smooth(1.0, 0.7);
  s.p_e = smooth(0.0, p_max);
  s.p_p = smooth(0.0, p_max);
  return s;
}

IdentityError ampere_gauss_mismatch(const Grid1D& grid, const SimState& state,
                                    const PhysicsParams& params, const SolverOptions& opts) {
  const Derivatives d = rhs(grid, state, params, opts);
  const Field dE_slope = ddx(grid, d.E);
  IdentityError out;
  for (std::size_t j = 0; j < grid.cells(); ++j) {
    const double charge_rate = params.omega_pe_sq * (d.n_p[j] - d.n_e[j]);
    out.error = std::max(out.error, std::fabs(dE_slope[j] - charge_rate));
    out.scale = std::max(out.scale, std::fabs(dE_slope[j]) +
                                        params.omega_pe_sq *
                                            (std::fabs(d.n_e[j]) + std::fabs(d.n_p[j])));
  }
  return out;
}

LangmuirMeasurement measure_langmuir_period(const LangmuirSetup& setup) {
  const Grid1D grid(setup.half_width, setup.cells);
  const PhysicsParams params = make_physics_params(setup.N0, setup.alpha);
  InitialCondition ic;
  ic.kind = InitialKind::sine;
  ic.epsilon = setup.epsilon;
  ic.base_e = setup.base_e;
  ic.base_p = setup.base_p;
  ic.mode = 1;
  SimState state = initial_condition(grid, params, ic);

  LangmuirMeasurement out;
  const double omega = std::sqrt(params.omega_pe_sq * (setup.base_e + setup.base_p));
  out.expected = 2.0 * kPi / omega;

  const double nominal = setup.dt_over_dx * grid.dx();
  const auto steps = static_cast<std::size_t>(std::ceil(setup.periods * out.expected / nominal));
  out.dt = nominal;

  // Every cell oscillates with the same frequency, so project onto the
  // initial profile to get one scalar signal.
  const Field profile = state.E;
  auto project = [&](const SimState& s) {
    double acc = 0.0;
    for (std::size_t j = 0; j < grid.cells(); ++j) acc += s.E[j] * profile[j];
    return acc;
  };

  SolverOptions opts;
  std::vector<double> signal{project(state)};
  for (std::size_t n = 0; n < steps; ++n) {
    state = rk4_step(grid, state, out.dt, params, opts);
    signal.push_back(project(state));
  }

  // Least squares for s_{n+1} = c1 s_n + c2 s_{n-1}.
  double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t n = 1; n + 1 < signal.size(); ++n) {
    const double u = signal[n], v = signal[n - 1], y = signal[n + 1];
    a11 += u * u;
    a12 += u * v;
    a22 += v * v;
    b1 += u * y;
    b2 += v * y;
  }
  const double det = a11 * a22 - a12 * a12;
  const double c1 = (b1 * a22 - b2 * a12) / det;
  const double c2 = (a11 * b2 - a12 * b1) / det;
  // Characteristic roots r exp(+-i theta): r^2 = -c2, 2 r cos(theta) = c1.
  const double r = std::sqrt(-c2);
  const double theta = std::acos(std::clamp(c1 / (2.0 * r), -1.0, 1.0));
  out.period = 2.0 * kPi * out.dt / theta;
  return out;
}

std::vector<CheckResult> run_self_checks() {
  return {check_rate_parity(),        check_rate_suppression(), check_rate_units(),
          check_convergence(false),   check_convergence(true),  check_discrete_divergence(),
          check_ampere_gauss(),       check_langmuir()};
}

} // namespace pairfluid
