#include "pairfluid/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string_view>
#include <system_error>

#include "pairfluid/config.hpp"
#include "pairfluid/errors.hpp"

namespace pairfluid {

namespace fs = std::filesystem;

namespace {

std::ofstream open_for_write(const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                        ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
  out.close();
}

std::vector<double> parse_row(std::string_view line, const fs::path& path, int lineno) {
  std::vector<double> values;
  while (true) {
    const auto comma = line.find(',');
    const std::string_view cell = line.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad number '" +
                    std::string(cell) + "'");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return values;
}

std::ifstream open_for_read(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

} // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw IoError("number formatting failed");
  return std::string(buf.data(), ptr);
}

void write_series(const fs::path& path, std::span<const SeriesRecord> records) {
  std::ofstream out = open_for_write(path);
  out << kSeriesHeader << '\n';
  for (const SeriesRecord& r : records) {
    const double row[] = {r.t,           r.field_energy,     r.kinetic_e,   r.kinetic_p,
                          r.total_energy, r.total_energy_sub, r.delta_pairs, r.max_abs_E,
                          r.max_gamma,   r.gauss_residual,   r.balance_rhs};
    bool first = true;
    for (double v : row) {
      if (!first) out << ',';
      out << format_double(v);
      first = false;
    }
    out << '\n';
  }
  close_checked(out, path);
}

std::vector<SeriesRecord> read_series(const fs::path& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line) || line != kSeriesHeader)
    throw IoError(path.string() + ": missing or unexpected series header");
  std::vector<SeriesRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto v = parse_row(line, path, lineno);
    if (v.size() != 11) throw IoError(path.string() + ": wrong column count");
    records.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10]});
  }
  return records;
}

fs::path snapshot_path(const fs::path& dir, std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof name, "fields_%06zu.csv", index);
  return dir / name;
}

fs::path write_snapshot(const fs::path& dir, const Grid1D& grid, const SimState& state,
                        std::size_t index) {
  check_shape(grid, state);
  const fs::path path = snapshot_path(dir, index);
  std::ofstream out = open_for_write(path);
  out << "# t = " << format_double(state.t) << '\n';
  out << kSnapshotHeader << '\n';
  for (std::size_t j = 0; j < grid.cells(); ++j) {
    out << format_double(grid.x(j)) << ',' << format_double(state.E[j]) << ','
        << format_double(state.n_e[j]) << ',' << format_double(state.n_p[j]) << ','
        << format_double(state.p_e[j]) << ',' << format_double(state.p_p[j]) << '\n';
  }
  close_checked(out, path);
  return path;
}

Snapshot read_snapshot(const fs::path& path) {
  std::ifstream in = open_for_read(path);
  Snapshot snap;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view prefix = "# t = ";
      if (std::string_view(line).starts_with(prefix)) {
        const auto v = parse_row(std::string_view(line).substr(prefix.size()), path, lineno);
        snap.state.t = v.at(0);
      }
      continue;
    }
    if (!header_seen) {
      if (line != kSnapshotHeader)
        throw IoError(path.string() + ": unexpected snapshot header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto v = parse_row(line, path, lineno);
    if (v.size() != 6) throw IoError(path.string() + ": wrong column count");
    snap.x.push_back(v[0]);
    snap.state.E.push_back(v[1]);
    snap.state.n_e.push_back(v[2]);
    snap.state.n_p.push_back(v[3]);
    snap.state.p_e.push_back(v[4]);
    snap.state.p_p.push_back(v[5]);
  }
  if (!header_seen) throw IoError(path.string() + ": not a snapshot file");
  return snap;
}

std::string file_digest(const fs::path& path) {
  std::ifstream in = open_for_read(path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw IoError("sha256 initialisation failed");
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    const auto n = in.gcount();
    if (n > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(n));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

void write_manifest(const fs::path& dir, const RunConfig& config, const RunResult& result,
                    std::span<const fs::path> outputs) {
  const fs::path path = dir / "manifest.txt";
  std::ofstream out = open_for_write(path);
  out << "# pairfluid run manifest, format 1\n";
  out << "# resolved configuration\n";
  out << format_config(config);
  out << "# run\n";
  out << "#   dt = " << format_double(result.dt) << '\n';
  out << "#   steps = " << result.steps_taken << '\n';
  out << "#   t_final = " << format_double(result.final_state.t) << '\n';
  out << "#   status = " << (result.breakdown ? "breakdown" : "ok") << '\n';
  if (result.breakdown) out << "#   breakdown = " << *result.breakdown << '\n';
  out << "# outputs (sha256)\n";
  for (const fs::path& p : outputs)
    out << "#   " << file_digest(p) << "  " << p.filename().string() << '\n';
  close_checked(out, path);
}

FileObserver::FileObserver(fs::path dir) : dir_(std::move(dir)) {}

void FileObserver::on_record(const SeriesRecord& record) { records_.push_back(record); }

void FileObserver::on_snapshot(const Grid1D& grid, const SimState& state, std::size_t index) {
  snapshots_.push_back(write_snapshot(dir_, grid, state, index));
}

std::vector<fs::path> FileObserver::finish(const RunConfig& config, const RunResult& result) {
  const fs::path series = dir_ / "series.csv";
  write_series(series, records_);
  std::vector<fs::path> outputs{series};
  outputs.insert(outputs.end(), snapshots_.begin(), snapshots_.end());
  write_manifest(dir_, config, result, outputs);
  outputs.push_back(dir_ / "manifest.txt");
  return outputs;
}

} // namespace pairfluid
