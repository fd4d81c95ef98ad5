#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reescalc/error.hpp"
#include "reescalc/polynomial.hpp"

namespace reescalc {

/// Dense element of a free module S^q.
using PolyVector = std::vector<Polynomial>;

enum class PositionPolicy { kTermOverPosition, kPositionOverTerm };

/// Monomial order on module monomials m·e_i.
class ModuleOrder {
 public:
  ModuleOrder() = default;
  /// `priority[c]` is the rank of component c (0 = most significant).
  /// An empty list means component 0 is most significant, then 1, ...
  ModuleOrder(MonomialOrder mono, PositionPolicy policy,
              std::vector<std::uint32_t> priority = {});

  static ModuleOrder term_over_position(const RingContext& ring) {
    return ModuleOrder(ring.order(), PositionPolicy::kTermOverPosition);
  }

  int compare(const Monomial& a, std::uint32_t ca, const Monomial& b,
              std::uint32_t cb) const noexcept;
  const MonomialOrder& monomial_order() const noexcept { return mono_; }
  PositionPolicy policy() const noexcept { return policy_; }

  friend bool operator==(const ModuleOrder&, const ModuleOrder&) = default;

 private:
  int compare_components(std::uint32_t a, std::uint32_t b) const noexcept;

  MonomialOrder mono_;
  PositionPolicy policy_ = PositionPolicy::kTermOverPosition;
  std::vector<std::uint32_t> priority_;
};

struct ModTerm {
  Monomial mono;
  std::uint32_t comp = 0;
  Scalar coeff;
};

/// Sparse module element, terms strictly decreasing in some ModuleOrder.
using SparseVec = std::vector<ModTerm>;

SparseVec to_sparse(const PolyVector& v, const ModuleOrder& order);
PolyVector to_dense(const SparseVec& v, const Ring& ring, std::size_t rank);

/// Reduced Gröbner basis: monic, auto-reduced, sorted by increasing leading term.
struct GroebnerBasis {
  ModuleOrder order;
  std::vector<SparseVec> elements;
};

/// Deterministic work counters, reported instead of wall-clock times.
struct WorkCounters {
  std::atomic<std::uint64_t> groebner_runs{0};
  std::atomic<std::uint64_t> pairs_reduced{0};
  std::atomic<std::uint64_t> reductions_to_zero{0};
};
WorkCounters& work_counters();
void reset_work_counters();

/// Finitely generated submodule of S^q (q = 1 for ideals). Values are
/// immutable; the Gröbner basis for the default order is computed at most
/// once per value and shared between copies.
class Submodule {
 public:
  Submodule() = default;
  Submodule(Ring ring, std::size_t rank, std::vector<PolyVector> generators = {});

  static Submodule ideal(Ring ring, std::vector<Polynomial> generators);
  static Submodule zero(Ring ring, std::size_t rank) { return Submodule(std::move(ring), rank); }
  static Submodule ambient(Ring ring, std::size_t rank);
  /// Monomials of total base degree k (the ideal m^k), as an ideal of `ring`.
  static Submodule maximal_ideal_power(Ring ring, unsigned k);

  const Ring& ring() const noexcept { return ring_; }
  std::size_t rank() const noexcept { return rank_; }
  const std::vector<PolyVector>& generators() const noexcept { return gens_; }
  bool is_ideal() const noexcept { return rank_ == 1; }
  /// Generators of an ideal as polynomials (requires rank 1).
  std::vector<Polynomial> ideal_generators() const;

  /// Every nonzero generator has exactly one nonzero term.
  bool is_monomial() const;
  bool has_nonzero_generator() const;

  /// Reduced basis in the default term-over-position order.
  const GroebnerBasis& basis(const Deadline& deadline = {}) const;
  /// Same module, generated by its reduced Gröbner basis.
  Submodule reduced() const;

  std::string to_string() const;

 private:
  struct Cache;

  Ring ring_;
  std::size_t rank_ = 0;
  std::vector<PolyVector> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Incremental Buchberger with the coprime and chain criteria and the normal
/// selection strategy. The coprime criterion is only applied to pairs whose
/// elements are supported in a single component.
class GroebnerEngine {
 public:
  GroebnerEngine(Ring ring, std::size_t rank, ModuleOrder order, Deadline deadline = {});
  ~GroebnerEngine();
  GroebnerEngine(GroebnerEngine&&) noexcept;
  GroebnerEngine& operator=(GroebnerEngine&&) noexcept;

  /// Reduces `v` against the current basis and inserts the remainder.
  /// Returns false if the remainder is zero.
  bool add(SparseVec v);
  void complete();
  /// Full normal form against the current basis.
  SparseVec reduce(SparseVec v) const;
  std::vector<SparseVec> reduced_basis() const;
  const ModuleOrder& order() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Reduced Gröbner basis of U in `order`, returned as a submodule generated
/// by the basis elements (sorted by increasing leading term).
Submodule groebner_basis(const Submodule& u, const ModuleOrder& order,
                         const Deadline& deadline = {});

/// Remainder of v modulo the default-order basis of U.
PolyVector normal_form(const PolyVector& v, const Submodule& u);
bool is_member(const PolyVector& v, const Submodule& u);

bool contains(const Submodule& u, const Submodule& v);
bool equal(const Submodule& u, const Submodule& v);

Submodule sum(const Submodule& u, const Submodule& v);
/// J·U for an ideal J.
Submodule ideal_times(const Submodule& j, const Submodule& u);

struct ColonFlags {
  bool colon_by_zero_ideal = false;
};

Submodule intersect(const Submodule& u, const Submodule& v, const Deadline& deadline = {});
/// U ∩ k[remaining variables]^q. `vars` are variable names of U's ring.
Submodule eliminate(const Submodule& u, const std::vector<std::string>& vars,
                    const Deadline& deadline = {});
/// U :_{S^q} J. Colon by the zero ideal is the ambient module and sets the flag.
Submodule colon(const Submodule& u, const Submodule& j, ColonFlags* flags = nullptr,
                const Deadline& deadline = {});
/// Stable value of U : J ⊆ U : J^2 ⊆ ...
Submodule saturate(const Submodule& u, const Submodule& j, ColonFlags* flags = nullptr,
                   const Deadline& deadline = {});

/// Given generators w_1..w_s of W ⊆ S^a with images φ(w_j) ∈ S^b, returns
/// {Σ c_j w_j : Σ c_j φ(w_j) ∈ N}.
Submodule preimage(const Submodule& w, const std::vector<PolyVector>& images,
                   const Submodule& n, const Deadline& deadline = {});

/// Exact quotient f / g; throws PreconditionError if g does not divide f.
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);

/// Minimal monomial generators per component (monomial modules only).
Submodule minimalize_monomial(const Submodule& u);

/// Subset of the generators with none redundant (a minimal generating set
/// when the generators are homogeneous).
Submodule prune_generators(const Submodule& u, const Deadline& deadline = {});

/// Number of base-variable monomials m·e_c, over all components, that are
/// leading terms of W but not of U (dim_k W/U for U ⊆ W). nullopt = infinite.
/// Only meaningful when both live in a ring without fiber variables.
std::optional<std::uint64_t> relative_length(const Submodule& w, const Submodule& u);
/// dim_k S^q / U; nullopt when infinite.
std::optional<std::uint64_t> colength(const Submodule& u);

}  // namespace reescalc
