#include "pairfluid/grid.hpp"

#include <cmath>
#include <string>

#include "pairfluid/errors.hpp"

namespace pairfluid {

namespace {

void require_size(const Grid1D& grid, std::span<const double> f, const char* name) {
  if (f.size() != grid.cells())
    throw InvalidState(std::string(name) + ": field length " + std::to_string(f.size()) +
                       " does not match grid of " + std::to_string(grid.cells()) + " cells");
}

} // namespace

Grid1D::Grid1D(double half_width, std::size_t cells)
    : half_width_(half_width), cells_(cells), dx_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw InvalidParameter("grid half width must be positive and finite");
  if (cells < 8 || cells % 2 != 0)
    throw InvalidParameter("grid cell count must be even and at least 8");
  dx_ = 2.0 * half_width / static_cast<double>(cells);
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> xs(cells_);
  for (std::size_t j = 0; j < cells_; ++j) xs[j] = x(j);
  return xs;
}

// The stencils below are written as differences of mirrored pairs so that
// reflecting the input reflects the output bit for bit.

Field ddx(const Grid1D& grid, std::span<const double> f) {
  require_size(grid, f, "ddx");
  const std::size_t m = grid.cells();
  const double inv = 1.0 / (12.0 * grid.dx());
  Field out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double near = f[grid.wrap(j, 1)] - f[grid.wrap(j, -1)];
    const double far = f[grid.wrap(j, -2)] - f[grid.wrap(j, 2)];
    out[j] = (8.0 * near + far) * inv;
  }
  return out;
}

Field d2dx2(const Grid1D& grid, std::span<const double> f) {
  require_size(grid, f, "d2dx2");
  const std::size_t m = grid.cells();
  const double inv = 1.0 / (12.0 * grid.dx() * grid.dx());
  Field out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double near = f[grid.wrap(j, 1)] + f[grid.wrap(j, -1)];
    const double far = f[grid.wrap(j, 2)] + f[grid.wrap(j, -2)];
    out[j] = (16.0 * near - far - 30.0 * f[j]) * inv;
  }
  return out;
}

double integrate(const Grid1D& grid, std::span<const double> f) {
  require_size(grid, f, "integrate");
  double sum = 0.0;
  for (double v : f) sum += v;
  return grid.dx() * sum;
}

Field poisson_init_E(const Grid1D& grid, std::span<const double> n_e,
                     std::span<const double> n_p, double omega_pe_sq) {
  require_size(grid, n_e, "poisson_init_E");
  require_size(grid, n_p, "poisson_init_E");
  const std::size_t m = grid.cells();

  Field g(m);
  for (std::size_t j = 0; j < m; ++j) g[j] = 1.0 - n_e[j] + n_p[j];

  const double net = integrate(grid, g);
  const double tolerance = 1e-8 * grid.length();
  if (!(std::fabs(net) <= tolerance)) throw ChargeImbalance(net, tolerance);

  // ddx = (S - S^-1)(8 - S - S^-1) / (12 dx) with S the unit shift. Its null
  // space is the constant and the alternating mode, so both are projected out
  // of the charge; what remains is inverted exactly, factor by factor.
  double sum_even = 0.0, sum_odd = 0.0;
  for (std::size_t j = 0; j < m; j += 2) {
    sum_even += g[j];
    sum_odd += g[j + 1];
  }
  const double half = static_cast<double>(m / 2);
  for (std::size_t j = 0; j < m; ++j) {
    g[j] = omega_pe_sq * (g[j] - ((j % 2 == 0) ? sum_even : sum_odd) / half);
  }

  // (S - S^-1) w = 12 dx g: one recurrence per sublattice.
  const double h = 12.0 * grid.dx();
  Field w(m, 0.0);
  for (std::size_t k = 1; k + 1 < m; ++k) w[k + 1] = w[k - 1] + h * g[k];
  double mean_even = 0.0, mean_odd = 0.0;
  for (std::size_t j = 0; j < m; j += 2) {
    mean_even += w[j];
    mean_odd += w[j + 1];
  }
  mean_even /= half;
  mean_odd /= half;
  for (std::size_t j = 0; j < m; ++j) w[j] -= (j % 2 == 0) ? mean_even : mean_odd;

  // 8 - S - S^-1 = (1 - r S)(1 - r S^-1) / r with r = 4 - sqrt(15). Each
  // factor is a periodic first-order recurrence, started from its exact
  // periodic value.
  const double r = 4.0 - std::sqrt(15.0);
  const double wrap_gain = 1.0 / (1.0 - std::pow(r, static_cast<double>(m)));

  Field y(m);
  double acc = 0.0, rk = 1.0;
  for (std::size_t k = 0; k < m; ++k, rk *= r) acc += rk * w[m - 1 - k];
  double prev = acc * wrap_gain;
  for (std::size_t j = 0; j < m; ++j) prev = y[j] = w[j] + r * prev;

  Field E(m);
  acc = 0.0;
  rk = 1.0;
  for (std::size_t k = 0; k < m; ++k, rk *= r) acc += rk * y[k];
  double next = acc * wrap_gain;
  for (std::size_t j = m; j-- > 0;) next = E[j] = y[j] + r * next;
  for (double& v : E) v *= r;

  // Anchor E = 0 on the seam, using the fourth-order face interpolant.
  const double seam = (9.0 * (E[0] + E[m - 1]) - (E[1] + E[m - 2])) / 16.0;
  for (double& v : E) v -= seam;
  return E;
}

Field hyperdiffusion(const Grid1D& grid, std::span<const double> f, double nu_h) {
  require_size(grid, f, "hyperdiffusion");
  if (nu_h < 0.0) throw InvalidParameter("hyperdiffusion coefficient must be non-negative");
  const std::size_t m = grid.cells();
  Field out(m, 0.0);
  if (nu_h == 0.0) return out;
  for (std::size_t j = 0; j < m; ++j) {
    const double near = f[grid.wrap(j, 1)] + f[grid.wrap(j, -1)];
    const double far = f[grid.wrap(j, 2)] + f[grid.wrap(j, -2)];
    out[j] = -nu_h * (far - 4.0 * near + 6.0 * f[j]);
  }
  return out;
}

Field bohm_potential(const Grid1D& grid, std::span<const double> n,
                     std::span<const double> gamma) {
  require_size(grid, n, "bohm_potential");
  require_size(grid, gamma, "bohm_potential");
  const std::size_t m = grid.cells();
  Field s(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (!(n[j] > 0.0))
      throw InvalidState("Bohm potential needs positive density (cell " + std::to_string(j) +
                         ")");
    if (!(gamma[j] >= 1.0))
      throw InvalidState("Bohm potential needs gamma >= 1 (cell " + std::to_string(j) + ")");
    s[j] = std::sqrt(n[j] / gamma[j]);
  }
  Field out = d2dx2(grid, s);
  for (std::size_t j = 0; j < m; ++j) out[j] /= s[j];
  return out;
}

} // namespace pairfluid
