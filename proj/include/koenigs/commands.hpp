#pragma once

// Subcommand bodies behind the `koenigs` executable. Each one writes its
// table or report to `out`, diagnostics to `err`, and returns the process
// exit code.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "koenigs/config.hpp"
#include "koenigs/wavefunctions.hpp"

namespace koenigs::cli {

inline constexpr const char* kVersion = "1.0";

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,      // bad config, pattern mismatch, unknown id
  kEmpty = 2,            // no level found / unsolved selector
  kContinuousOnly = 3,   // KIV, KV
  kVerifyMismatch = 4,
};

/// "# koenigs 1.0 <command> units hbar=<..> mass=<..>"
std::string header_line(const std::string& command, const UnitScalars& units);

/// Shortest round-trippable text for a double (17 significant digits).
std::string format_double(double x);

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int cmd_special_cases(const RunConfig& cfg, const std::string& case_id, std::ostream& out, std::ostream& err);

/// Reads one point per line as three numbers separated by whitespace or
/// commas. Blank lines and lines starting with '#' are skipped.
std::vector<Point3> read_points(std::istream& in);

int cmd_deltav(const RunConfig& cfg, const std::vector<Point3>& points, std::ostream& out, std::ostream& err);

/// Always writes a JSON report, also when the exit code is kVerifyMismatch.
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct SampleSpec {
  int qn_index = 0;      // which entry of the expanded quantum numbers
  int level_index = 0;   // which root of that entry, in ascending energy
  std::optional<Chart> chart;
  Point3 direction{1.0, 1.0, 1.0};
  double s_max = 0.0;    // 0 picks 6 length scales
  int samples = 200;
};

/// Samples Psi and |Psi|^2 at s_max*i/samples, i = 1..samples, along the ray
/// through `direction`.
int cmd_wavefunction(const RunConfig& cfg, const SampleSpec& sample, std::ostream& out, std::ostream& err);

/// Separability metadata for "V1".."V5" or "KI".."KV"; an empty id lists all.
int cmd_info(const std::string& id, const std::string& format, std::ostream& out, std::ostream& err);

}  // namespace koenigs::cli
