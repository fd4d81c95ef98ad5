#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reescalc/rees.hpp"

namespace reescalc {

enum class ClosureMethod { kTrivial, kColonChain, kReductionBased, kNewton, kCandidateVerified };
std::string to_string(ClosureMethod m);

struct ClosureResult {
  Submodule value;
  ClosureMethod method = ClosureMethod::kTrivial;
  /// ℓ* for chain methods: the chain is constant from ℓ* on, over the window.
  unsigned stabilization_index = 0;
  unsigned window = 0;
  bool certified = false;
  /// Chain values, one per ℓ, as lengths over the input (chain methods only).
  std::vector<std::uint64_t> chain_lengths;
  /// Smallest m with value^m = input^m found by the post-check, if any.
  std::optional<unsigned> power_equality_index;
  std::vector<std::string> notes;
};

/// The colon chain did not settle within ℓ_max; carries the last value.
class UnstableChain : public Error {
 public:
  UnstableChain(const std::string& what, Submodule last) : Error(what), last_(std::move(last)) {}
  const Submodule& last_value() const noexcept { return last_; }

 private:
  Submodule last_;
};

enum class RrRoute {
  kDegreewise,  // ∪ (M^n)^{ℓ+1} :_{F^n} (M^n)^ℓ computed inside F^n
  kIdealInS,    // Ratliff–Rush of the ideal (MS)^n of S, then the degree-n piece
};

struct ChainOptions {
  unsigned lmax = 10;
  unsigned window = 2;
  RrRoute route = RrRoute::kDegreewise;
  /// Bound for the power-equality post-check.
  unsigned power_check_max = 4;
  Deadline deadline;
};

ClosureResult ratliff_rush_ideal(const Submodule& j, const ChainOptions& opts = {});
/// Ratliff–Rush closure of M^n inside F^n.
ClosureResult ratliff_rush_module(const ModuleEmbedding& e, unsigned n, const ChainOptions& opts = {});

struct SemiDecision {
  bool yes = false;
  unsigned s = 0;  // witness exponent when yes
};

/// L is a reduction of M (both given as column sets in the same F) when
/// M^{s+1} = L·M^s for some s ≤ s_max. Throws PreconditionError if L ⊄ M.
SemiDecision is_reduction(const ModuleEmbedding& l, const ModuleEmbedding& m, unsigned s_max,
                          const Deadline& deadline = {});
/// x is integral over M when M is a reduction of M + Ax.
SemiDecision is_integral_element(const ModuleEmbedding& e, const PolyVector& x, unsigned s_max,
                                 const Deadline& deadline = {});

/// ∪_n [M^{n+1} :_F (A x_1^n + ... + A x_ℓ^n)] for a reduction L = (x_1..x_ℓ).
ClosureResult rr_via_reduction(const ModuleEmbedding& e, const std::vector<PolyVector>& reduction,
                               unsigned n_max, const ChainOptions& opts = {});

/// Newton-polyhedron closure of a monomial ideal in two variables.
ClosureResult integral_closure_monomial(const Submodule& ideal);
/// Monomial ideals I_1..I_r when M = I_1 ⊕ ... ⊕ I_r in the standard basis.
std::optional<std::vector<Submodule>> monomial_summands(const ModuleEmbedding& e);

struct ClosureOptions {
  /// s bound for verifying candidates.
  unsigned s_max = 3;
  /// Run the Ratliff–Rush fixed-point test on the result.
  bool check_ratliff_rush = true;
  /// Test socle elements of F/N for integrality and adjoin the ones that pass.
  bool socle_probes = true;
  unsigned probe_s_max = 2;
  ChainOptions chain;
  Deadline deadline;
};

/// M̄ ⊆ F. Exact for direct sums of monomial ideals; otherwise
/// M + (verified candidates), flagged as uncertified.
ClosureResult integral_closure_module(const ModuleEmbedding& e, const std::vector<PolyVector>& candidates = {},
                                      const ClosureOptions& opts = {});
/// Closure of M^n inside F^n, from the closure of M: the multi-Rees rule for
/// monomial direct sums, (M̄)^n otherwise.
ClosureResult integral_closure_power(const ModuleEmbedding& e, const ClosureResult& closure, unsigned n);

/// x^n + c_1 x^{n-1} + ... + c_n == 0 in S. Throws PreconditionError when a
/// nonzero c_i is not fiber-homogeneous of degree i·deg(x).
bool check_integral_equation(const Polynomial& x, const std::vector<Polynomial>& coeffs);
/// Whether each c_i lies in (MS)^i, as required of an integral equation over MS.
bool coefficients_in_powers(const ModuleEmbedding& e, const std::vector<Polynomial>& coeffs);

}  // namespace reescalc
