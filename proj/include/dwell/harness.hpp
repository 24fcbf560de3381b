#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dwell/ccs.hpp"
#include "dwell/model.hpp"
#include "dwell/reference.hpp"

namespace dwell {

/// Rectangular phase-space grid of basis-state centers.  Odd counts put a
/// point exactly on the center (the occupied Gaussian).  `mirrored` appends
/// a copy reflected through the origin, (q, p) -> (-q, -p).
struct GridSpec {
  PhasePoint center{};
  int nq = 7;
  int np = 7;
  double half_width_q = 0.6;
  double half_width_p = 0.6;
  bool mirrored = false;
};

struct MadeGrid {
  std::vector<cplx> labels;
  std::size_t occupied = 0;  // index of the center point
};

MadeGrid make_grid(const GridSpec& spec);

enum class EnergyClass { below, above };

/// Per-label comparison of the on-slice ordered energy against the ordered
/// separatrix energy.
std::vector<EnergyClass> classify_energies(std::span<const cplx> labels,
                                           const WellParams& params);

struct ExperimentConfig {
  double D = 1.0;
  GridSpec grid;  // center defaults to (+sqrt(8 D), 0) when unset
  double dt = 1e-3;
  double t_final = 263.0;
  double eps = 1e-8;
  std::vector<double> snapshot_times;
  std::string scenario = "run";
  std::string out_dir = ".";

  WellParams well() const { return WellParams{D}; }
};

/// Parses a `key = value` config file.  Blank lines and `#` comments are
/// skipped; unknown keys are errors.  Keys: D, nq, np, half_width_q,
/// half_width_p, mirrored, dt, t_final, eps, snapshot_times, scenario,
/// out_dir.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<string>");

struct CorrelationRow {
  double t = 0.0;
  cplx c_ccs;
  double abs_c_ref = 0.0;
  double norm_ccs = 0.0;
};

struct SnapshotRow {
  double t = 0.0;
  int label_index = 0;
  double q = 0.0;
  double p = 0.0;
  cplx a;
};

struct ScenarioResult {
  std::vector<CorrelationRow> series;
  std::vector<SnapshotRow> snapshots;
  std::filesystem::path correlation_csv;
  std::filesystem::path snapshot_csv;
  std::filesystem::path separatrix_csv;
};

/// Runs the CCS and the split-operator reference propagations on identical
/// time grids and writes the three scenario CSVs into cfg.out_dir
/// (<scenario>_correlation.csv, <scenario>_snapshots.csv,
/// <scenario>_separatrix.csv).  The correlation series is sampled every 0.1
/// time units (or every step when dt > 0.1).
ScenarioResult run_scenario(const ExperimentConfig& cfg);

/// Grid + classification CSV (<scenario>_grid.csv) without propagating;
/// returns the label count below the ordered separatrix energy.
struct GridReport {
  std::size_t total = 0;
  std::size_t below = 0;
  std::filesystem::path csv;
};
GridReport write_grid_report(const ExperimentConfig& cfg);

/// Level-set CSV rows (q, p, variant) for both potential variants.
void write_separatrix_csv(const std::filesystem::path& path,
                          const WellParams& params, int n_sweep = 400);

}  // namespace dwell
