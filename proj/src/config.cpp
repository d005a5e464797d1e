#include "pairfluid/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <system_error>

#include "pairfluid/errors.hpp"
#include "pairfluid/io.hpp"

namespace pairfluid {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view v, int line) {
  // from_chars rejects a leading '+', which people do write.
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError("expected a number, got '" + std::string(v) + "'", line);
  return out;
}

std::size_t parse_count(std::string_view v, int line) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("expected a non-negative integer, got '" + std::string(v) + "'", line);
  return out;
}

bool parse_bool(std::string_view v, int line) {
  if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "off" || v == "0" || v == "no") return false;
  throw ConfigError("expected a boolean, got '" + std::string(v) + "'", line);
}

InitialKind parse_kind(std::string_view v, int line) {
  if (v == "paper-gaussian") return InitialKind::paper_gaussian;
  if (v == "sine") return InitialKind::sine;
  if (v == "uniform") return InitialKind::uniform;
  if (v == "file") return InitialKind::file;
  throw ConfigError("unknown initial condition kind '" + std::string(v) + "'", line);
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  return std::string(v);
}

using Setter = std::function<void(RunConfig&, std::string_view, int)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"physics.N0", [](RunConfig& c, auto v, int l) { c.physics.N0 = parse_number(v, l); }},
      {"physics.alpha",
       [](RunConfig& c, auto v, int l) { c.physics.alpha = parse_number(v, l); }},
      {"physics.a", [](RunConfig& c, auto v, int l) { c.physics.a = parse_number(v, l); }},
      {"physics.eps_field",
       [](RunConfig& c, auto v, int l) { c.physics.eps_field = parse_number(v, l); }},
      {"grid.half_width",
       [](RunConfig& c, auto v, int l) { c.grid.half_width = parse_number(v, l); }},
      {"grid.cells", [](RunConfig& c, auto v, int l) { c.grid.cells = parse_count(v, l); }},
      {"solver.dt", [](RunConfig& c, auto v, int l) { c.solver.dt = parse_number(v, l); }},
      {"solver.cfl", [](RunConfig& c, auto v, int l) { c.solver.cfl = parse_number(v, l); }},
      {"solver.t_end",
       [](RunConfig& c, auto v, int l) { c.solver.t_end = parse_number(v, l); }},
      {"solver.displacement_terms",
       [](RunConfig& c, auto v, int l) { c.solver.displacement_terms = parse_bool(v, l); }},
      {"solver.bohm", [](RunConfig& c, auto v, int l) { c.solver.bohm = parse_bool(v, l); }},
      {"solver.nu_h", [](RunConfig& c, auto v, int l) { c.solver.nu_h = parse_number(v, l); }},
      {"solver.paper_ampere_sign",
       [](RunConfig& c, auto v, int l) { c.solver.paper_ampere_sign = parse_bool(v, l); }},
      {"ic.kind", [](RunConfig& c, auto v, int l) { c.ic.kind = parse_kind(v, l); }},
      {"ic.L", [](RunConfig& c, auto v, int l) { c.ic.L = parse_number(v, l); }},
      {"ic.base_e", [](RunConfig& c, auto v, int l) { c.ic.base_e = parse_number(v, l); }},
      {"ic.base_p", [](RunConfig& c, auto v, int l) { c.ic.base_p = parse_number(v, l); }},
      {"ic.amplitude",
       [](RunConfig& c, auto v, int l) { c.ic.amplitude = parse_number(v, l); }},
      {"ic.epsilon", [](RunConfig& c, auto v, int l) { c.ic.epsilon = parse_number(v, l); }},
      {"ic.mode",
       [](RunConfig& c, auto v, int l) {
         const std::size_t m = parse_count(v, l);
         if (m > 1000000) throw ConfigError("ic.mode is out of range", l);
         c.ic.mode = static_cast<int>(m);
       }},
      {"ic.p_e", [](RunConfig& c, auto v, int l) { c.ic.p_e = parse_number(v, l); }},
      {"ic.p_p", [](RunConfig& c, auto v, int l) { c.ic.p_p = parse_number(v, l); }},
      {"ic.file", [](RunConfig& c, auto v, int) { c.ic.file = unquote(v); }},
      {"output.dir", [](RunConfig& c, auto v, int) { c.output.dir = unquote(v); }},
      {"output.series_every",
       [](RunConfig& c, auto v, int l) { c.output.series_every = parse_count(v, l); }},
      {"output.snapshot_every",
       [](RunConfig& c, auto v, int l) { c.output.snapshot_every = parse_count(v, l); }},
  };
  return table;
}

} // namespace

PhysicsParams RunConfig::physics_params() const {
  return make_physics_params(physics.N0, physics.alpha, physics.a, physics.eps_field);
}

Grid1D RunConfig::make_grid() const { return Grid1D(grid.half_width, grid.cells); }

std::string_view to_string(InitialKind kind) {
  switch (kind) {
  case InitialKind::paper_gaussian: return "paper-gaussian";
  case InitialKind::sine: return "sine";
  case InitialKind::uniform: return "uniform";
  case InitialKind::file: return "file";
  }
  return "unknown";
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  int lineno = 0;
  while (!text.empty()) {
    ++lineno;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'section.key = value'", lineno);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("expected 'section.key = value'", lineno);

    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown key '" + std::string(key) + "'", lineno);
    if (!seen.insert(std::string(key)).second)
      throw ConfigError("duplicate key '" + std::string(key) + "'", lineno);
    it->second(config, value, lineno);
  }
  if (config.solver.dt && config.solver.cfl)
    throw ConfigError("solver.dt and solver.cfl are mutually exclusive");
  if (!config.solver.dt && !config.solver.cfl) config.solver.cfl = 0.4;
  validate(config);
  return config;
}

void validate(const RunConfig& c) {
  try {
    (void)c.physics_params();
    const Grid1D grid = c.make_grid();
    if (c.solver.dt && c.solver.cfl)
      throw ConfigError("solver.dt and solver.cfl are mutually exclusive");
    if (c.solver.cfl && !(*c.solver.cfl > 0.0 && *c.solver.cfl <= kCflMax))
      throw ConfigError("solver.cfl must lie in (0, 0.5]");
    if (c.solver.dt && !(*c.solver.dt > 0.0))
      throw ConfigError("solver.dt must be positive");
    if (!(c.solver.nu_h >= 0.0)) throw ConfigError("solver.nu_h must be non-negative");
    (void)plan_steps(grid, c.solver);
    if (!(c.ic.L > 0.0)) throw ConfigError("ic.L must be positive");
    if (!(c.ic.base_e > 0.0) || !(c.ic.base_p > 0.0))
      throw ConfigError("ic.base_e and ic.base_p must be positive");
    if (c.ic.kind == InitialKind::sine && c.ic.mode < 1)
      throw ConfigError("ic.mode must be at least 1");
    if (c.ic.kind == InitialKind::file && c.ic.file.empty())
      throw ConfigError("ic.kind = file needs ic.file");
    if (c.output.series_every == 0) throw ConfigError("output.series_every must be positive");
    if (c.output.dir.empty()) throw ConfigError("output.dir must not be empty");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::string format_config(const RunConfig& c) {
  std::ostringstream os;
  auto num = [&](const char* key, double v) { os << key << " = " << format_double(v) << '\n'; };
  auto flag = [&](const char* key, bool v) { os << key << " = " << (v ? "true" : "false") << '\n'; };
  num("physics.N0", c.physics.N0);
  num("physics.alpha", c.physics.alpha);
  num("physics.a", c.physics.a);
  num("physics.eps_field", c.physics.eps_field);
  num("grid.half_width", c.grid.half_width);
  os << "grid.cells = " << c.grid.cells << '\n';
  if (c.solver.dt) num("solver.dt", *c.solver.dt);
  if (c.solver.cfl) num("solver.cfl", *c.solver.cfl);
  num("solver.t_end", c.solver.t_end);
  flag("solver.displacement_terms", c.solver.displacement_terms);
  flag("solver.bohm", c.solver.bohm);
  num("solver.nu_h", c.solver.nu_h);
  flag("solver.paper_ampere_sign", c.solver.paper_ampere_sign);
  os << "ic.kind = " << to_string(c.ic.kind) << '\n';
  num("ic.L", c.ic.L);
  num("ic.base_e", c.ic.base_e);
  num("ic.base_p", c.ic.base_p);
  num("ic.amplitude", c.ic.amplitude);
  num("ic.epsilon", c.ic.epsilon);
  os << "ic.mode = " << c.ic.mode << '\n';
  num("ic.p_e", c.ic.p_e);
  num("ic.p_p", c.ic.p_p);
  if (!c.ic.file.empty()) os << "ic.file = \"" << c.ic.file << "\"\n";
  os << "output.dir = \"" << c.output.dir << "\"\n";
  os << "output.series_every = " << c.output.series_every << '\n';
  os << "output.snapshot_every = " << c.output.snapshot_every << '\n';
  return os.str();
}

} // namespace pairfluid
