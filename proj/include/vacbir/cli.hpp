#pragma once

#include <exception>
#include <optional>
#include <ostream>
#include <string>

namespace vacbir::cli {

enum ExitCode : int {
  ok = 0,
  config_error = 2,
  domain_error = 3,
  accuracy_error = 4,
};

struct TotalOptions {
  std::string config;
  std::optional<std::string> out;  ///< JSON summary path
  bool oracle = false;
  double tol = 1e-3;
};

struct ScanOptions {
  std::string config;
  std::optional<std::string> out;  ///< CSV path; stdout when unset
  std::string param;
  std::string from;
  std::string to;
  int steps = 11;
  std::string scale = "linear";
};

struct AngularOptions {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> theta_max;  ///< angle with unit, e.g. "150 urad"
  int grid = 41;
};

int cmd_total(const TotalOptions& o, std::ostream& out);
int cmd_scan(const ScanOptions& o, std::ostream& out);
int cmd_angular(const AngularOptions& o, std::ostream& out);

/// Exit code for a library exception: validation and dimension errors 2,
/// physics-domain errors 3, accuracy and overflow errors 4, anything else 1.
int exit_code_for(const std::exception& e);

/// Parses argv, dispatches, and maps exceptions to exit codes with a
/// one-line diagnostic on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vacbir::cli
