#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "reescalc/closures.hpp"

namespace reescalc {

enum class Verdict { kTrue, kFalse, kUnproven };
std::string to_string(Verdict v);

/// Coefficients of ℓ(F^{n+1}/M^{n+1}) = Σ_i (-1)^i br_i C(n+D-1-i, D-1-i),
/// D = d + r with d = 2.
struct BrPolynomial {
  std::size_t rank = 0;
  std::vector<mpz_class> coeffs;
  /// Fit window [fit_lo, fit_hi] and how many degrees below it also matched.
  unsigned fit_lo = 0, fit_hi = 0;
  unsigned validated = 0;
  /// First n from which the polynomial agrees with every measured value.
  unsigned postulation = 0;
  /// Measured ℓ(F^{n+1}/M^{n+1}) for n = 0..fit_hi.
  std::vector<std::uint64_t> lengths;

  mpz_class evaluate(long n) const;
};

/// Fit from measured lengths; lengths[n] = ℓ(F^{n+1}/M^{n+1}).
BrPolynomial br_from_lengths(std::size_t rank, const std::vector<std::uint64_t>& lengths);
/// Measures lengths for n = 0..n_max and fits. Needs n_max >= r + 4.
BrPolynomial br_coefficients(const ModuleEmbedding& e, unsigned n_max, const Deadline& deadline = {});

struct BrCorollary {
  bool br1_identity = false;  // br_1 = br_0 - ℓ(F/M̄)
  bool vanishing = false;     // br_i = 0 for 2 <= i <= r+1
  bool closed_form = false;   // br_0 C(n+r+1, r+1) - br_1 C(n+r, r) at the sample degrees
  std::vector<unsigned> sample_degrees;
  std::uint64_t closure_colength = 0;
  bool value() const { return br1_identity && vanishing && closed_form; }
};
/// Requires the Ratliff-Rush closure to agree with a certified integral closure.
BrCorollary br_corollary_check(const BrPolynomial& b, const ModuleEmbedding& e, const ClosureResult& closure,
                               const ClosureResult& rr);

struct DegreeRow {
  unsigned n = 0;
  std::optional<std::uint64_t> colength;  // ℓ(F^n/M^n)
  std::optional<std::uint64_t> rr_gap;    // ℓ(M̃^n/M^n)
  std::optional<std::uint64_t> ic_gap;    // ℓ(closure of M^n / M^n)
  /// The Ratliff-Rush value is pinned: it equals M^n by the sandwich, or it
  /// equals a certified integral closure.
  bool rr_certified = false;
};

struct Condition {
  Verdict verdict = Verdict::kUnproven;
  std::string evidence;
};

struct Theorem12Report {
  std::vector<DegreeRow> table;
  Condition c1, c2, c3, c4;
  std::optional<unsigned> first_equal_power;
  bool integrally_closed = false;
  bool closure_certified = false;
  bool consistent = true;
  std::vector<std::string> notes;
};

/// Conditions (1)-(4) of the equivalence for 1 <= n <= n_max. A definite
/// disagreement between them throws SoundnessAlert.
Theorem12Report theorem12_check(const ModuleEmbedding& e, const ClosureResult& closure, unsigned n_max,
                                const ChainOptions& chain = {});

struct BuchsbaumReport {
  bool m_closure_in_m = false;  // 𝔪M̄ ⊆ M
  bool product_clause = false;  // M·M̄ = M^2 in degree 2
  /// First x·g ∉ M found (x a variable, g a generator of M̄), as an element of S.
  std::optional<Polynomial> witness;
  std::optional<std::uint64_t> h1_proxy;  // ℓ(M̄/M)
  /// (n, closure of M^n == M^n) for n = 2..4, filled when both clauses hold.
  std::vector<std::pair<unsigned, bool>> tail;
  bool closure_certified = false;
  std::vector<std::string> notes;
  bool value() const { return m_closure_in_m && product_clause; }
};
BuchsbaumReport buchsbaum_check(const ModuleEmbedding& e, const ClosureResult& closure);

struct DirectSumReport {
  BuchsbaumReport first, second, combined;
  bool mixed_products = false;  // M1·M̄2 = M̄1·M2 = M1·M2
  bool value = false;
  bool consistent = true;
};
/// Both summands must be direct sums of monomial ideals.
DirectSumReport direct_sum_buchsbaum(const ModuleEmbedding& m1, const ModuleEmbedding& m2);

struct ScaledReport {
  ModuleEmbedding scaled;
  BuchsbaumReport report;
};
/// Reruns the criterion on IM for an integrally closed monomial ideal I
/// (𝔪-primary or the unit ideal). Throws SoundnessAlert if it fails.
ScaledReport scaled_buchsbaum_check(const ModuleEmbedding& e, const ClosureResult& closure, const Submodule& i);

struct IndecomposabilityReport {
  unsigned ord_fitt1 = 0;
  std::vector<unsigned> factor_ords;
  bool certified = false;
  std::string message;
};
/// Fitt_0(F/M) = I_1···I_l with integrally closed monomial I_i, r = 2.
IndecomposabilityReport indecomposability_check(const ModuleEmbedding& e, const std::vector<Submodule>& factors);

}  // namespace reescalc
