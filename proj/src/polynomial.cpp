#include "reescalc/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "reescalc/error.hpp"

namespace reescalc {

namespace {

std::vector<Term> merge(const MonomialOrder& order, const std::vector<Term>& a,
                        const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = (i == a.size()) ? -1 : (j == b.size()) ? 1 : order.compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Scalar s = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!s.is_zero()) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial Polynomial::from_terms(Ring ring, std::vector<Term> terms) {
  const auto& order = ring->order();
  std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) {
    return order.compare(x.mono, y.mono) > 0;
  });
  Polynomial p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Polynomial Polynomial::constant(Ring ring, const Scalar& c) {
  Polynomial p(ring);
  if (!c.is_zero()) p.terms_.push_back({ring->one(), c});
  return p;
}

Polynomial Polynomial::constant(Ring ring, long c) {
  Scalar s(c, ring->field());
  return constant(std::move(ring), s);
}

Polynomial Polynomial::monomial(Ring ring, const Monomial& m, const Scalar& c) {
  Polynomial p(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::monomial(Ring ring, const Monomial& m) {
  Scalar one = Scalar::one(ring->field());
  return monomial(std::move(ring), m, one);
}

Polynomial Polynomial::variable(Ring ring, std::size_t index) {
  Monomial m = ring->variable(index);
  return monomial(std::move(ring), m);
}

bool Polynomial::is_fiber_homogeneous() const noexcept {
  for (const auto& t : terms_)
    if (t.mono.fiber_degree() != terms_.front().mono.fiber_degree()) return false;
  return true;
}

std::uint32_t Polynomial::fiber_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.front().mono.fiber_degree();
}

std::uint32_t Polynomial::min_base_degree() const {
  if (terms_.empty()) throw PreconditionError("min_base_degree of the zero polynomial");
  std::uint32_t d = terms_.front().mono.base_degree();
  for (const auto& t : terms_) d = std::min(d, t.mono.base_degree());
  return d;
}

bool Polynomial::only_base_variables() const noexcept {
  for (const auto& t : terms_)
    if (t.mono.total_degree() != t.mono.base_degree()) return false;
  return true;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.is_zero()) return *this;
  if (!ring_) ring_ = o.ring_;
  require_same_ring(ring_, o.ring_);
  terms_ = merge(ring_->order(), terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.is_zero()) return *this;
  if (!ring_) ring_ = o.ring_;
  require_same_ring(ring_, o.ring_);
  terms_ = merge(ring_->order(), terms_, o.terms_, true);
  return *this;
}

Polynomial Polynomial::times(const Monomial& m, const Scalar& c) const {
  Polynomial out(ring_);
  if (c.is_zero()) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.mono * m, t.coeff * c});
  return out;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  return times(ring_ ? ring_->one() : Monomial(), c);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_ ? a.ring_ : b.ring_);
  require_same_ring(a.ring_, b.ring_);
  const Polynomial& small = a.size() <= b.size() ? a : b;
  const Polynomial& large = a.size() <= b.size() ? b : a;
  Polynomial acc(a.ring_);
  for (const auto& t : small.terms_) acc += large.times(t.mono, t.coeff);
  return acc;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (!a.terms_.empty()) require_same_ring(a.ring_, b.ring_);
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff))
      return false;
  return true;
}

std::string monomial_to_string(const Monomial& m, const RingContext& ring) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.name(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    bool neg = t.coeff.is_negative_printed();
    std::string c = t.coeff.to_string();
    if (neg) c.erase(0, 1);
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (t.mono.is_one()) {
      out += c;
    } else {
      if (c != "1") out += c + "*";
      out += monomial_to_string(t.mono, *ring_);
    }
  }
  return out;
}

Polynomial Polynomial::transfer(const Ring& target) const {
  if (ring_ == target || (ring_ && ring_->same_as(*target))) {
    Polynomial out = *this;
    out.ring_ = target;
    return out;
  }
  std::vector<std::size_t> map(ring_ ? ring_->num_vars() : 0);
  std::vector<bool> used(map.size(), false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < map.size(); ++i)
      if (t.mono[i]) used[i] = true;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (!used[i]) continue;
    auto idx = target->index_of(ring_->name(i));
    if (!idx) throw InputError("variable '" + ring_->name(i) + "' does not exist in target ring");
    map[i] = *idx;
  }
  if (!terms_.empty() && !(ring_->field() == target->field()))
    throw ContextMismatch("cannot transfer between different fields");
  std::vector<Term> out;
  out.reserve(terms_.size());
  std::vector<Exponent> e(target->num_vars());
  for (const auto& t : terms_) {
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t i = 0; i < map.size(); ++i)
      if (t.mono[i]) e[map[i]] = t.mono[i];
    out.push_back({Monomial(target->layout(), e), t.coeff});
  }
  return from_terms(target, std::move(out));
}

Polynomial poly_arith(const Polynomial& f, const Polynomial& g, PolyOp op) {
  if (f.ring() && g.ring()) require_same_ring(f.ring(), g.ring());
  switch (op) {
    case PolyOp::kAdd: return f + g;
    case PolyOp::kSub: return f - g;
    case PolyOp::kMul: return f * g;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : s_(text), ring_(ring) {}

  Polynomial parse() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) {
      if (starts_operand()) throw ParseError("implicit multiplication is not allowed; use '*'", pos_);
      throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    }
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_operand() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = acc * unary();
      } else if (peek('/')) {
        std::size_t at = ++pos_;
        skip();
        mpz_class d = integer();
        if (d == 0) throw ParseError("division by zero", at);
        Scalar inv(mpq_class(1, d), ring_->field());
        acc = acc.scaled(inv);
      } else if (starts_operand()) {
        throw ParseError("implicit multiplication is not allowed; use '*'", pos_);
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    Polynomial base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t at = pos_;
      mpz_class e = integer();
      if (e > 10000) throw ParseError("exponent too large", at);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Polynomial primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class v = integer();
      return Polynomial::constant(ring_, Scalar(mpq_class(v), ring_->field()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) throw ParseError("unknown variable '" + name + "'", start);
      return Polynomial::variable(ring_, *idx);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", pos_);
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Ring& ring) {
  return Parser(text, ring).parse();
}

}  // namespace reescalc
