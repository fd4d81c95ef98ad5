#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reescalc/scalar.hpp"

namespace reescalc {

inline constexpr std::size_t kMaxVariables = 16;
using Exponent = std::uint16_t;

/// Variables are laid out in three consecutive blocks: the base block
/// (x-block, coordinates of A), the fiber block (t-block, free basis of F),
/// and an auxiliary block used internally for elimination.
struct BlockLayout {
  std::uint8_t base = 0;
  std::uint8_t fiber = 0;
  std::uint8_t aux = 0;

  std::size_t size() const noexcept { return std::size_t{base} + fiber + aux; }
  friend bool operator==(const BlockLayout&, const BlockLayout&) = default;
};

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(BlockLayout layout) : layout_(layout) {}
  Monomial(BlockLayout layout, std::span<const Exponent> exponents);

  BlockLayout layout() const noexcept { return layout_; }
  std::size_t size() const noexcept { return layout_.size(); }
  Exponent operator[](std::size_t i) const noexcept { return e_[i]; }
  std::span<const Exponent> exponents() const noexcept { return {e_.data(), size()}; }

  std::uint32_t base_degree() const noexcept { return base_deg_; }
  std::uint32_t fiber_degree() const noexcept { return fiber_deg_; }
  std::uint32_t total_degree() const noexcept { return total_; }
  bool is_one() const noexcept { return total_ == 0; }

  void set(std::size_t i, Exponent value);

  bool divides(const Monomial& other) const noexcept;
  bool coprime(const Monomial& other) const noexcept;
  Monomial operator*(const Monomial& o) const noexcept;
  /// Requires divides(o, *this).
  Monomial operator/(const Monomial& o) const noexcept;
  Monomial lcm(const Monomial& o) const noexcept;
  Monomial gcd(const Monomial& o) const noexcept;

  std::size_t hash() const noexcept;
  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.layout_ == b.layout_ && a.e_ == b.e_;
  }

 private:
  void recompute() noexcept;

  std::array<Exponent, kMaxVariables> e_{};
  BlockLayout layout_{};
  std::uint32_t base_deg_ = 0;
  std::uint32_t fiber_deg_ = 0;
  std::uint32_t total_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Block order: blocks are compared in priority order; inside a block the
/// block degree decides first, then reverse lexicographic comparison.
class MonomialOrder {
 public:
  struct Block {
    std::uint8_t begin;
    std::uint8_t end;
    friend bool operator==(const Block&, const Block&) = default;
  };

  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}

  /// Fiber block, then base block (aux block, if any, first of all).
  static MonomialOrder standard(BlockLayout layout);

  /// <0, 0, >0 as a is smaller, equal, greater than b.
  int compare(const Monomial& a, const Monomial& b) const noexcept;
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  std::vector<Block> blocks_;
};

class RingContext;
using Ring = std::shared_ptr<const RingContext>;

/// The polynomial ring S = A[t-block] over A = k[x-block].
class RingContext {
 public:
  static Ring make(Field field, std::vector<std::string> base_names,
                   std::vector<std::string> fiber_names = {},
                   std::vector<std::string> aux_names = {});

  /// Base ring k[X, Y] plus fiber variables t1..tr.
  static Ring standard(std::size_t rank, Field field = Field{});

  const Field& field() const noexcept { return field_; }
  const BlockLayout& layout() const noexcept { return layout_; }
  const MonomialOrder& order() const noexcept { return order_; }
  std::size_t num_vars() const noexcept { return names_.size(); }
  std::size_t num_base() const noexcept { return layout_.base; }
  std::size_t num_fiber() const noexcept { return layout_.fiber; }
  std::size_t num_aux() const noexcept { return layout_.aux; }
  std::size_t fiber_begin() const noexcept { return layout_.base; }
  std::size_t aux_begin() const noexcept { return std::size_t{layout_.base} + layout_.fiber; }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Same field and base variables, no fiber or aux variables.
  Ring base_ring() const;
  /// Same field and base variables with `rank` fresh fiber variables.
  Ring with_fiber(std::size_t rank) const;
  /// Appends auxiliary variables; the aux block gets top priority.
  Ring with_aux(std::vector<std::string> aux_names) const;

  Monomial one() const { return Monomial(layout_); }
  Monomial variable(std::size_t i) const;

  bool same_as(const RingContext& other) const;

 private:
  RingContext() = default;

  Field field_;
  std::vector<std::string> names_;
  BlockLayout layout_;
  MonomialOrder order_;
};

/// Throws ContextMismatch unless both handles denote the same ring.
void require_same_ring(const Ring& a, const Ring& b);

}  // namespace reescalc
