#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reescalc/groebner.hpp"

namespace reescalc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFixtureFailed = 1,
  kExitUnproven = 2,
  kExitSoundness = 3,
  kExitInput = 4,
};

/// Command-line values; they take precedence over the file's options block.
struct Overrides {
  std::optional<unsigned> lmax, window, nmax;
  std::optional<std::uint32_t> characteristic;
};

struct Outcome {
  int exit_code = kExitOk;
  std::string json;     // the report, pretty-printed, trailing newline
  std::string summary;  // human-readable, for stderr
};

const std::vector<std::string>& commands();

/// Runs one command on the text of a problem file. Never throws for bad
/// input or alerts; those become exit codes and an `error` field.
Outcome run(const std::string& command, const std::string& problem_text, const Overrides& overrides = {});

struct Fixture {
  std::string name;
  std::string command;
  std::string problem;
  /// JSON pointer -> expected value, as JSON text.
  std::vector<std::pair<std::string, std::string>> expect;
  int exit_code = kExitOk;
};

/// The built-in corpus, sorted by name.
const std::vector<Fixture>& fixtures();

/// Runs every fixture (or the ones whose name contains `filter`).
Outcome run_fixtures(const std::string& filter = {}, const Overrides& overrides = {}, bool include_reports = false);

/// FNV-1a, 16 hex digits.
std::string digest(const std::string& text);

/// Reduced basis, listed by component, then degree, then falling X-degree.
std::vector<PolyVector> sorted_generators(const Submodule& u);

}  // namespace reescalc::cli
