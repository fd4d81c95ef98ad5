#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "reescalc/ring.hpp"
#include "reescalc/scalar.hpp"

namespace reescalc {

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Exact polynomial in a RingContext. Terms are kept strictly decreasing in
/// the ring's monomial order with no zero coefficients; zero is the empty list.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(Ring ring, std::vector<Term> terms);
  static Polynomial constant(Ring ring, const Scalar& c);
  static Polynomial constant(Ring ring, long c);
  static Polynomial monomial(Ring ring, const Monomial& m, const Scalar& c);
  static Polynomial monomial(Ring ring, const Monomial& m);
  static Polynomial variable(Ring ring, std::size_t index);

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }

  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }
  /// Every term has the same fiber degree (vacuously true for zero).
  bool is_fiber_homogeneous() const noexcept;
  /// Fiber degree of the leading term; 0 for the zero polynomial.
  std::uint32_t fiber_degree() const noexcept;
  /// Smallest total degree among the base-variable parts of the terms.
  std::uint32_t min_base_degree() const;
  /// True if no term involves a fiber or aux variable.
  bool only_base_variables() const noexcept;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Scalar& c) const;
  Polynomial times(const Monomial& m, const Scalar& c) const;
  Polynomial pow(unsigned n) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Canonical text: terms in order, `*` between factors, `^` for powers.
  std::string to_string() const;

  /// Re-expresses the polynomial in `target`, matching variables by name.
  /// Throws InputError if a used variable does not exist in `target`.
  Polynomial transfer(const Ring& target) const;

 private:
  Ring ring_;
  std::vector<Term> terms_;
};

enum class PolyOp { kAdd, kSub, kMul };

/// Exact f op g. Throws ContextMismatch when the rings differ.
Polynomial poly_arith(const Polynomial& f, const Polynomial& g, PolyOp op);

/// Grammar: integers, identifiers, `^` non-negative integer powers, `*`, `/`
/// by a nonzero integer, `+`, `-`, parentheses. Juxtaposition is rejected.
Polynomial parse_polynomial(std::string_view text, const Ring& ring);

std::string monomial_to_string(const Monomial& m, const RingContext& ring);

}  // namespace reescalc
