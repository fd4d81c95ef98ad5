#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "reescalc/rees.hpp"

namespace reescalc {

struct ProblemOptions {
  std::optional<unsigned> lmax, window, nmax, degree;
  std::optional<double> deadline_seconds;
};

/// A parsed problem file.
///
///   ring { vars = X, Y; char = 0 }
///   rank = 2
///   generators {
///     row = X^2, 0, Y^3
///     row = 0, X*Y, Y^2
///   }
///   candidates { col = X*Y, 0 }
///   factors { ideal = X, Y^2; closure = X^5, Y^8 }
///   scale { ideal = X, Y }
///   options { lmax = 10; window = 2; nmax = 6; degree = 1; deadline = 30 }
///
/// Statements end at a newline or `;`, `#` starts a comment. `generators`
/// takes either `row` entries (the r rows of the matrix) or `col` entries
/// (one generator per line), not both. `closure = ...` stands for the
/// Newton closure of a monomial ideal.
struct Problem {
  Ring ring;
  ModuleEmbedding embedding;
  std::vector<PolyVector> candidates;
  std::vector<Submodule> factors;
  std::vector<Submodule> scales;
  ProblemOptions options;
};

/// Throws InputError (with a line number) on malformed input. A given
/// `characteristic` overrides the one in the ring block.
Problem parse_problem(std::string_view text, std::optional<std::uint32_t> characteristic = {});

}  // namespace reescalc
