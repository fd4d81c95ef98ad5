#include "reescalc/scalar.hpp"

#include "reescalc/error.hpp"

namespace reescalc {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Field::Field(std::uint32_t characteristic) : p_(characteristic) {
  if (p_ != 0 && !is_prime(p_))
    throw InputError("characteristic " + std::to_string(p_) + " is not prime");
}

Scalar::Scalar(long value, Field field) : v_(value), p_(field.characteristic()) {
  reduce();
}

Scalar::Scalar(const mpq_class& value, Field field)
    : v_(value), p_(field.characteristic()) {
  v_.canonicalize();
  reduce();
}

void Scalar::reduce() {
  if (p_ == 0) return;
  mpz_class p(p_);
  mpz_class num = v_.get_num() % p;
  mpz_class den = v_.get_den() % p;
  if (den == 0) throw InputError("coefficient not in field F_" + std::to_string(p_));
  if (num < 0) num += p;
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    num = (num * inv) % p;
  }
  v_ = num;
}

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_) throw ContextMismatch("scalars from different fields");
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  out.v_ = -out.v_;
  out.reduce();
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  v_ += o.v_;
  if (p_ != 0) {
    if (v_ >= p_) v_ -= p_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  v_ -= o.v_;
  if (p_ != 0) {
    if (v_ < 0) v_ += p_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  v_ *= o.v_;
  if (p_ != 0) {
    mpz_class r = v_.get_num() % mpz_class(p_);
    v_ = r;
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  Scalar out = *this;
  if (p_ == 0) {
    out.v_ = 1 / v_;
    out.v_.canonicalize();
  } else {
    mpz_class inv, p(p_);
    mpz_invert(inv.get_mpz_t(), v_.get_num_mpz_t(), p.get_mpz_t());
    out.v_ = inv;
  }
  return out;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

std::string Scalar::to_string() const {
  if (p_ == 0) return v_.get_str();
  mpz_class n = v_.get_num();
  if (n > p_ / 2) n -= p_;
  return n.get_str();
}

bool Scalar::is_negative_printed() const {
  if (p_ == 0) return sgn(v_) < 0;
  return v_.get_num() > p_ / 2;
}

}  // namespace reescalc
