#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pairfluid/diagnostics.hpp"
#include "pairfluid/grid.hpp"
#include "pairfluid/solver.hpp"
#include "pairfluid/state.hpp"

namespace pairfluid {

struct RunConfig;

inline constexpr const char* kSeriesHeader =
    "t,field_energy,kinetic_e,kinetic_p,total_energy,total_energy_sub,delta_pairs,"
    "max_abs_E,max_gamma,gauss_residual,balance_rhs";
inline constexpr const char* kSnapshotHeader = "x,E,n_e,n_p,p_e,p_p";

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// series.csv: header plus one LF-terminated row per record. Throws IoError.
void write_series(const std::filesystem::path& path, std::span<const SeriesRecord> records);
std::vector<SeriesRecord> read_series(const std::filesystem::path& path);

// fields_NNNNNN.csv inside dir: a "# t = ..." line, the header, one row per
// cell. Returns the written path. Throws IoError.
std::filesystem::path snapshot_path(const std::filesystem::path& dir, std::size_t index);
std::filesystem::path write_snapshot(const std::filesystem::path& dir, const Grid1D& grid,
                                     const SimState& state, std::size_t index);

struct Snapshot {
  std::vector<double> x;
  SimState state;
};
Snapshot read_snapshot(const std::filesystem::path& path);

// Lower-case hex SHA-256 of a file's bytes. Throws IoError.
std::string file_digest(const std::filesystem::path& path);

// Writes manifest.txt: the resolved config in config grammar followed by
// commented run facts and a digest line per output file.
void write_manifest(const std::filesystem::path& dir, const RunConfig& config,
                    const RunResult& result, std::span<const std::filesystem::path> outputs);

// Observer that writes snapshots as they arrive and keeps the records for
// series.csv, which finish() writes along with the manifest.
class FileObserver : public RunObserver {
public:
  explicit FileObserver(std::filesystem::path dir);

  void on_record(const SeriesRecord& record) override;
  void on_snapshot(const Grid1D& grid, const SimState& state, std::size_t index) override;

  // Writes series.csv and manifest.txt. Returns every file written.
  std::vector<std::filesystem::path> finish(const RunConfig& config, const RunResult& result);

private:
  std::filesystem::path dir_;
  std::vector<SeriesRecord> records_;
  std::vector<std::filesystem::path> snapshots_;
};

} // namespace pairfluid
