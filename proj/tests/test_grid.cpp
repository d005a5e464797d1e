#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pairfluid/errors.hpp"
#include "pairfluid/grid.hpp"
#include "pairfluid/physics.hpp"

using namespace pairfluid;

namespace {

Field sample(const Grid1D& g, auto&& fn) {
  Field f(g.cells());
  for (std::size_t j = 0; j < g.cells(); ++j) f[j] = fn(g.x(j));
  return f;
}

double linf(const Field& a, const Field& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::fabs(a[j] - b[j]));
  return worst;
}

Field random_periodic(const Grid1D& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double k = kPi / g.half_width();
  const double a1 = u(rng), a2 = u(rng), a3 = u(rng), c = u(rng);
  return sample(g, [&](double x) {
    return c + a1 * std::sin(k * x + 0.3) + a2 * std::cos(2 * k * x) + a3 * std::sin(5 * k * x);
  });
}

} // namespace

TEST_CASE("grid geometry and validation") {
  const Grid1D g(10.0, 64);
  CHECK(g.dx() == doctest::Approx(20.0 / 64.0));
  CHECK(g.x(0) == doctest::Approx(-10.0 + 0.5 * g.dx()));
  CHECK(g.x(63) == doctest::Approx(10.0 - 0.5 * g.dx()));
  CHECK(g.dx() * 64 == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(g.wrap(0, -1) == 63);
  CHECK(g.wrap(63, 2) == 1);
  CHECK_THROWS_AS(Grid1D(10.0, 7), InvalidParameter);
  CHECK_THROWS_AS(Grid1D(10.0, 6), InvalidParameter);
  CHECK_THROWS_AS(Grid1D(10.0, 65), InvalidParameter);
  CHECK_THROWS_AS(Grid1D(0.0, 64), InvalidParameter);
}

TEST_CASE("ddx") {
  const Grid1D g(10.0, 64);

  SUBCASE("constant") {
    const Field d = ddx(g, Field(64, 3.7));
    for (double v : d) CHECK(v == 0.0);
  }

  SUBCASE("sawtooth across the seam") {
    const Field d = ddx(g, g.centers());
    for (std::size_t j = 2; j + 2 < 64; ++j) CHECK(d[j] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t j : {0, 1, 62, 63}) CHECK(std::fabs(d[j]) > 5.0);
  }

  SUBCASE("fourth-order convergence on sin(kx)") {
    double prev = 0.0;
    for (std::size_t m : {64, 128, 256}) {
      const Grid1D gm(10.0, m);
      const double k = kPi / 10.0;
      const Field f = sample(gm, [&](double x) { return std::sin(k * x); });
      const Field exact = sample(gm, [&](double x) { return k * std::cos(k * x); });
      const double err = linf(ddx(gm, f), exact);
      if (prev > 0.0) CHECK(prev / err >= 15.0);
      prev = err;
    }
  }

  SUBCASE("odd input gives even output") {
    const double k = kPi / 10.0;
    const Field f = sample(g, [&](double x) { return std::sin(3 * k * x) + x * 0.0; });
    const Field d = ddx(g, f);
    for (std::size_t j = 0; j < 64; ++j) CHECK(d[j] == doctest::Approx(d[63 - j]).epsilon(1e-13));
  }

  SUBCASE("discrete divergence theorem") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
      const Field f = random_periodic(g, rng);
      CHECK(std::fabs(integrate(g, ddx(g, f))) < 1e-13);
    }
  }
}

TEST_CASE("d2dx2") {
  const Grid1D g(10.0, 64);
  for (double v : d2dx2(g, Field(64, -2.0))) CHECK(v == 0.0);

  const Field parabola = sample(g, [](double x) { return x * x; });
  const Field d = d2dx2(g, parabola);
  for (std::size_t j = 2; j + 2 < 64; ++j) CHECK(d[j] == doctest::Approx(2.0).epsilon(1e-11));

  double prev = 0.0;
  for (std::size_t m : {64, 128, 256}) {
    const Grid1D gm(10.0, m);
    const double k = kPi / 10.0;
    const Field f = sample(gm, [&](double x) { return std::sin(k * x); });
    const Field exact = sample(gm, [&](double x) { return -k * k * std::sin(k * x); });
    const double err = linf(d2dx2(gm, f), exact);
    if (prev > 0.0) CHECK(prev / err >= 15.0);
    prev = err;
  }
}

TEST_CASE("integrate") {
  const Grid1D g(10.0, 64);
  CHECK(integrate(g, Field(64, 1.0)) == doctest::Approx(20.0).epsilon(1e-15));
  const double k = kPi / 10.0;
  CHECK(std::fabs(integrate(g, sample(g, [&](double x) { return std::sin(k * x); }))) < 1e-14);

  // Gaussian of width L on a box X >= 5L: the truncated tails are below
  // erfc(5) ~ 1.5e-12, so the midpoint sum must match sqrt(pi) L.
  const double L = 3.0;
  for (double X : {5.0 * L, 6.0 * L}) {
    const Grid1D gg(X, 256);
    const double s = integrate(gg, sample(gg, [&](double x) { return std::exp(-x * x / (L * L)); }));
    CHECK(std::fabs(s - std::sqrt(kPi) * L) / (std::sqrt(kPi) * L) < 1e-10);
  }
  // At X = 4L the tails are erfc(4) ~ 1.5e-8, so compare with sqrt(pi) L erf(4).
  const Grid1D g4(4.0 * L, 256);
  const double s4 = integrate(g4, sample(g4, [&](double x) { return std::exp(-x * x / (L * L)); }));
  CHECK(std::fabs(s4 - std::sqrt(kPi) * L * std::erf(4.0)) / s4 < 1e-10);
}

TEST_CASE("poisson_init_E") {
  const PhysicsParams params = make_physics_params(0.2, 1.0 / 137.0);
  const double w2 = params.omega_pe_sq;

  SUBCASE("exactly neutral uniform plasma") {
    const Grid1D g(100.0, 64);
    const Field E = poisson_init_E(g, Field(64, 1.01), Field(64, 0.01), w2);
    for (double v : E) CHECK(std::fabs(v) < 1e-18);
  }

  SUBCASE("reference Gaussian perturbation") {
    const double L = 6000.0, X = 24000.0;
    const Grid1D g(X, 2048);
    const Field ne = sample(g, [&](double x) {
      const double u = x / L;
      return 1.01 + 2.0 * u * std::exp(-u * u);
    });
    const Field E = poisson_init_E(g, ne, Field(2048, 0.01), w2);
    // Analytic antiderivative w^2 L (exp(-x^2/L^2) - exp(-X^2/L^2)).
    const Field exact = sample(g, [&](double x) {
      return w2 * L * (std::exp(-x * x / (L * L)) - std::exp(-X * X / (L * L)));
    });
    CHECK(linf(E, exact) < 2e-9 * w2 * L);
    const auto peak = std::max_element(E.begin(), E.end());
    CHECK(*peak == doctest::Approx(w2 * L * (1.0 - std::exp(-16.0))).epsilon(1e-5));
    CHECK(*peak == doctest::Approx(0.44373).epsilon(1e-4));
    CHECK(std::fabs(g.x(static_cast<std::size_t>(peak - E.begin()))) < g.dx());
  }

  SUBCASE("sine perturbation with seam anchoring") {
    const double X = 500.0, eps = 1e-3;
    const Grid1D g(X, 256);
    const double k = kPi / X;
    const Field ne = sample(g, [&](double x) { return 1.01 + eps * std::sin(k * x); });
    const Field E = poisson_init_E(g, ne, Field(256, 0.01), w2);
    const Field exact = sample(g, [&](double x) {
      return w2 * eps / k * (std::cos(k * x) - std::cos(k * X));
    });
    CHECK(linf(E, exact) < 1e-7 * w2 * eps / k);
  }

  SUBCASE("ddx of the result reproduces the charge to rounding") {
    const double L = 50.0;
    for (std::size_t m : {128, 256, 512}) {
      const Grid1D g(6.0 * L, m);
      const Field ne = sample(g, [&](double x) {
        const double u = x / L;
        return 1.0 + 0.5 * u * std::exp(-u * u);
      });
      const Field np(m, 0.0);
      const Field E = poisson_init_E(g, ne, np, 1.0);
      const Field slope = ddx(g, E);
      double err = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        err = std::max(err, std::fabs(slope[j] - (1.0 - ne[j] + np[j])));
      CHECK(err < 1e-14);
    }
  }

  SUBCASE("net charge is rejected") {
    const Grid1D g(10.0, 64);
    CHECK_THROWS_AS(poisson_init_E(g, Field(64, 1.0), Field(64, 0.1), w2), ChargeImbalance);
    try {
      poisson_init_E(g, Field(64, 1.0), Field(64, 0.1), w2);
    } catch (const ChargeImbalance& e) {
      CHECK(e.residual() == doctest::Approx(2.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("hyperdiffusion") {
  const Grid1D g(10.0, 16);
  Field alt(16);
  for (std::size_t j = 0; j < 16; ++j) alt[j] = (j % 2 == 0) ? 1.0 : -1.0;
  for (double v : hyperdiffusion(g, alt, 0.0)) CHECK(v == 0.0);
  for (double v : hyperdiffusion(g, Field(16, 5.0), 0.7)) CHECK(v == 0.0);
  const Field h = hyperdiffusion(g, alt, 1.0);
  for (std::size_t j = 0; j < 16; ++j) CHECK(h[j] == -16.0 * alt[j]);
  CHECK_THROWS_AS(hyperdiffusion(g, alt, -1.0), InvalidParameter);
}

TEST_CASE("Bohm potential") {
  SUBCASE("constant n/gamma") {
    const Grid1D g(10.0, 32);
    for (double v : bohm_potential(g, Field(32, 2.0), Field(32, 2.0))) CHECK(v == 0.0);
  }

  SUBCASE("Gaussian n/gamma") {
    const double sigma = 2.0;
    double prev = 0.0;
    for (std::size_t m : {128, 256, 512}) {
      const Grid1D g(8.0 * sigma, m);
      const Field n = sample(g, [&](double x) { return 3.0 * std::exp(-x * x / (sigma * sigma)); });
      const Field gamma(m, 3.0);
      const Field u = bohm_potential(g, n, gamma);
      double err = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double x = g.x(j);
        if (std::fabs(x) > 3.0 * sigma) continue;
        const double s4 = sigma * sigma * sigma * sigma;
        err = std::max(err, std::fabs(u[j] - (x * x / s4 - 1.0 / (sigma * sigma))));
      }
      if (prev > 0.0) CHECK(prev / err >= 14.0);
      prev = err;
    }
    CHECK(prev < 1e-6);
  }

  SUBCASE("cosh squared profile") {
    const double w = 5.0;
    const Grid1D g(10.0, 256);
    const Field n = sample(g, [&](double x) { return std::pow(std::cosh(x / w), 2); });
    const Field u = bohm_potential(g, n, Field(256, 1.0));
    for (std::size_t j = 2; j + 2 < 256; ++j)
      CHECK(u[j] == doctest::Approx(1.0 / (w * w)).epsilon(1e-7));
  }

  SUBCASE("non-positive density") {
    const Grid1D g(10.0, 16);
    Field n(16, 1.0);
    n[3] = 0.0;
    CHECK_THROWS_AS(bohm_potential(g, n, Field(16, 1.0)), InvalidState);
  }
}
