#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace reescalc {

/// Coefficient field: the rationals (characteristic 0) or a prime field.
class Field {
 public:
  static constexpr std::uint32_t kDefaultPrime = 32003;

  Field() = default;
  /// Throws InputError if `characteristic` is neither 0 nor a prime.
  explicit Field(std::uint32_t characteristic);

  std::uint32_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;
  static Field from_raw(std::uint32_t p) {
    Field f;
    f.p_ = p;
    return f;
  }

  std::uint32_t p_ = 0;
};

/// Exact field element. Over Q the value is kept in lowest terms with a
/// positive denominator; over F_p it is the representative in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value, Field field);
  Scalar(const mpq_class& value, Field field);

  static Scalar zero(Field f) { return Scalar(0L, f); }
  static Scalar one(Field f) { return Scalar(1L, f); }

  Field field() const noexcept { return Field::from_raw(p_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  const mpq_class& value() const noexcept { return v_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.p_ == b.p_ && a.v_ == b.v_;
  }

  /// Over F_p, prints the symmetric representative so that -1 reads as -1.
  std::string to_string() const;
  /// True when the printed form starts with '-'.
  bool is_negative_printed() const;

 private:
  void reduce();
  void check_same(const Scalar& o) const;

  mpq_class v_;
  std::uint32_t p_ = 0;
};

}  // namespace reescalc
