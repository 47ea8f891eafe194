#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "msmono/diagnostics.hpp"
#include "msmono/geometry.hpp"
#include "msmono/quadrature.hpp"

namespace msmono {

enum ExitCode : int { kExitPass = 0, kExitVerdictFail = 1, kExitConfig = 2, kExitNoConvergence = 3 };

struct RunConfig {
  std::string command;
  // Path or inline JSON; required by every command except sharpness and twopoint.
  std::string model_source;
  Point2 center{0.0, 0.0};
  // Unset radius/grid fields take per-command defaults.
  std::optional<double> r_min;
  std::optional<double> r_max;
  std::optional<int> r_steps;
  std::optional<GridKind> grid_kind;
  int quad_order = 16;
  std::optional<double> quad_tol;
  int fourier_K = 64;
  int cert_n = 4096;
  std::string out_path;  // empty: stdout
  std::string out_format = "csv";
  std::uint64_t seed = 0;

  int directions = kTangentGapDirections;
  int bumps = 20;
  std::vector<int> claims{1, 2, 3, 4};
  std::string landscape_path;
};

// Runs one command and writes its table. Diagnostics go to `log`.
int run(const RunConfig& config, std::ostream& log);

// Parses argv (CLI11) into a RunConfig and runs it.
int run_cli(int argc, char** argv);

// Inverse of the scan CSV row format (columns as in the scan header).
ScanRow parse_scan_csv_line(const std::string& line);

inline constexpr const char* kScanCsvHeader = "r,F,E,E_dir,jump_count,D1,D2,dlms_residual,circle_tau,circle_nu,skipped";

}  // namespace msmono
