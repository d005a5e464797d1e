#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pairfluid {

using Field = std::vector<double>;

// Uniform periodic grid on [-X, X) with cell-centered values.
class Grid1D {
public:
  Grid1D(double half_width, std::size_t cells);

  double half_width() const noexcept { return half_width_; }
  std::size_t cells() const noexcept { return cells_; }
  double dx() const noexcept { return dx_; }
  double length() const noexcept { return 2.0 * half_width_; }

  // Center of cell j: -X + (j + 1/2) dx.
  double x(std::size_t j) const noexcept {
    return -half_width_ + (static_cast<double>(j) + 0.5) * dx_;
  }
  std::vector<double> centers() const;

  // Periodic neighbour j + offset.
  std::size_t wrap(std::size_t j, std::ptrdiff_t offset) const noexcept {
    const auto m = static_cast<std::ptrdiff_t>(cells_);
    auto k = (static_cast<std::ptrdiff_t>(j) + offset) % m;
    if (k < 0) k += m;
    return static_cast<std::size_t>(k);
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
  double half_width_;
  std::size_t cells_;
  double dx_;
};

// Fourth-order central first derivative, periodic.
Field ddx(const Grid1D& grid, std::span<const double> f);

// Fourth-order central second derivative, periodic.
Field d2dx2(const Grid1D& grid, std::span<const double> f);

// Midpoint rule dx * sum f_j, summed sequentially in index order.
double integrate(const Grid1D& grid, std::span<const double> f);

// Electric field from the periodic Gauss law dE/dx = w^2 (1 - n_e + n_p).
// Solved exactly against the discrete ddx stencil in O(M), so ddx(E) matches
// the charge to rounding (apart from its alternating component, which ddx
// cannot represent). Anchored so E = 0 on the seam between the last and
// first cells. Throws ChargeImbalance when the net charge exceeds 1e-8 * 2X.
Field poisson_init_E(const Grid1D& grid, std::span<const double> n_e,
                     std::span<const double> n_p, double omega_pe_sq);

// -nu_h (f_{j+2} - 4 f_{j+1} + 6 f_j - 4 f_{j-1} + f_{j-2}).
Field hyperdiffusion(const Grid1D& grid, std::span<const double> f, double nu_h);

// Spatial part of the relativistic Bohm potential, s^{-1} d^2 s/dx^2 with
// s = sqrt(n/gamma). Throws InvalidState on non-positive density.
Field bohm_potential(const Grid1D& grid, std::span<const double> n,
                     std::span<const double> gamma);

} // namespace pairfluid
