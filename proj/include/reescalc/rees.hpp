#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reescalc/groebner.hpp"

namespace reescalc {

/// The t-monomials of one fiber degree, in decreasing order. Position k is
/// the k-th basis vector of F^n = S_n.
class FiberBasis {
 public:
  FiberBasis() = default;
  FiberBasis(const Ring& rees_ring, unsigned degree);

  unsigned degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return monos_.size(); }
  const Monomial& operator[](std::size_t k) const { return monos_[k]; }
  const std::vector<Monomial>& monomials() const noexcept { return monos_; }
  std::optional<std::size_t> index_of(const Monomial& m) const;

 private:
  unsigned degree_ = 0;
  std::vector<Monomial> monos_;
  std::vector<std::pair<Monomial, std::size_t>> sorted_;
};

/// A submodule of F^n over A, where F^n has the t-monomials of degree n as basis.
struct GradedPiece {
  unsigned degree = 0;
  Submodule module;
};

/// M ⊆ F = A^r given by a generator matrix, together with the ideal
/// MS ⊆ S = A[t1..tr]. Copies share the power and length caches.
class ModuleEmbedding {
 public:
  ModuleEmbedding() = default;
  /// `columns[j]` is the j-th generator of M as a vector of length `rank`.
  ModuleEmbedding(Ring base, std::size_t rank, std::vector<PolyVector> columns);
  /// Rows of the generator matrix (r rows of equal length).
  static ModuleEmbedding from_rows(Ring base, const std::vector<std::vector<Polynomial>>& rows);
  static ModuleEmbedding from_ideal(const Submodule& ideal);
  /// Same F, generated by the columns of `m`.
  static ModuleEmbedding from_submodule(const Submodule& m);
  /// Block diagonal M1 ⊕ M2 ⊆ F1 ⊕ F2.
  static ModuleEmbedding direct_sum(const ModuleEmbedding& a, const ModuleEmbedding& b);

  const Ring& base_ring() const;
  const Ring& rees_ring() const;
  std::size_t rank() const;
  const std::vector<PolyVector>& columns() const;
  /// M as a submodule of A^r.
  const Submodule& module() const;
  /// MS, generated by the t-linear forms of the columns.
  const Submodule& rees_ideal() const;
  bool is_zero() const;
  /// ℓ_A(F/M), nullopt when infinite. Cached.
  std::optional<std::uint64_t> colength() const;

  const FiberBasis& fiber_basis(unsigned n) const;
  /// M^n ⊆ F^n, with a pruned generating set. M^0 = A.
  const GradedPiece& power(unsigned n, const Deadline& deadline = {}) const;
  /// F^n itself.
  GradedPiece ambient(unsigned n) const;
  /// A submodule of F given in degree 1 coordinates.
  GradedPiece degree_one(const Submodule& n) const;

  /// Σ v_i t_i for a column v.
  Polynomial linear_form(const PolyVector& v) const;
  /// Coordinates of a fiber-homogeneous element of S of degree n.
  PolyVector to_graded(const Polynomial& f, unsigned n) const;
  Polynomial from_graded(const PolyVector& v, unsigned n) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// U·V ⊆ F^{a+b} for U ⊆ F^a and V ⊆ F^b.
GradedPiece piece_product(const ModuleEmbedding& e, const GradedPiece& u, const GradedPiece& v,
                          const Deadline& deadline = {});
/// The degree-n component of (MS)^k; for k = n this is M^n.
GradedPiece graded_piece(const ModuleEmbedding& e, unsigned k, unsigned n);
/// Degree-n component of a t-homogeneous ideal of S.
GradedPiece graded_component(const ModuleEmbedding& e, const Submodule& ideal_in_s, unsigned n);
/// x·U ⊆ F^{n+1} as an explicit map on generators: the images of the columns.
std::vector<PolyVector> multiply_vectors(const ModuleEmbedding& e, const std::vector<PolyVector>& u,
                                         unsigned a, const PolyVector& p, unsigned b);

/// μ(U) = dim_k U/𝔪U, by greedy selection modulo 𝔪U.
std::size_t min_gens(const Submodule& u, const Deadline& deadline = {});
std::size_t min_gens(const ModuleEmbedding& e);

struct ParameterReport {
  bool finite_colength = false;
  std::optional<std::uint64_t> colength;
  bool inside_mf = false;
  std::size_t mu = 0;
  std::size_t expected_mu = 0;
  bool value = false;
};
ParameterReport is_parameter_module(const ModuleEmbedding& e);

/// Ideal of (r-i)-minors of the generator matrix.
Submodule fitting_ideal(const ModuleEmbedding& e, std::size_t i);
/// Largest n with I ⊆ 𝔪^n. Throws PreconditionError for the zero ideal.
unsigned ord(const Submodule& ideal);
/// dim_k of the degree-n part of the fiber cone, i.e. μ(M^n).
std::size_t fiber_cone_hilbert(const ModuleEmbedding& e, unsigned n);

/// Whether every entry is homogeneous for some positive weight on the base
/// variables, with one degree shift per row and per column.
struct GradingInfo {
  bool graded = false;
  std::string kind;  // "standard", "weighted", or empty
  std::vector<unsigned> weights;
  std::vector<long> row_shifts;
};
GradingInfo detect_grading(const ModuleEmbedding& e);

}  // namespace reescalc
