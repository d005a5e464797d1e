#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "pairfluid/physics.hpp"
#include "pairfluid/solver.hpp"

namespace pairfluid {

struct PhysicsSection {
  double N0 = 0.2;
  double alpha = kAlphaCodata;
  double a = 0.0;
  double eps_field = kDefaultEpsField;
};

struct GridSection {
  double half_width = 24000.0;
  std::size_t cells = 2048;
};

struct OutputSection {
  std::string dir = "output";
  std::size_t series_every = 1;
  std::size_t snapshot_every = 16;
};

struct RunConfig {
  PhysicsSection physics;
  GridSection grid;
  SolverOptions solver;
  InitialCondition ic;
  OutputSection output;

  PhysicsParams physics_params() const;
  Grid1D make_grid() const;
};

// Parses the line-oriented config grammar:
//
//   # comment
//   section.key = value   # trailing comments allowed
//
// Sections: physics {N0, alpha, a, eps_field}, grid {half_width, cells},
// solver {dt, cfl, t_end, displacement_terms, bohm, nu_h, paper_ampere_sign},
// ic {kind, L, base_e, base_p, amplitude, epsilon, mode, p_e, p_p, file},
// output {dir, series_every, snapshot_every}. Numbers use '.' as decimal
// point regardless of locale; booleans are true/false/on/off/1/0.
// Missing keys keep their defaults. The result is validated.
// Throws ConfigError.
RunConfig parse_config(std::string_view text);

// Checks every value against its documented range. Throws ConfigError.
void validate(const RunConfig& config);

// Renders the config in the same grammar with round-trip precision, so
// parse_config(format_config(c)) reproduces c.
std::string format_config(const RunConfig& config);

std::string_view to_string(InitialKind kind);

} // namespace pairfluid
