#include "reescalc/ring.hpp"

#include <algorithm>
#include <set>

#include "reescalc/error.hpp"

namespace reescalc {

Monomial::Monomial(BlockLayout layout, std::span<const Exponent> exponents)
    : layout_(layout) {
  if (exponents.size() != layout.size())
    throw ContextMismatch("exponent vector length does not match the ring");
  std::copy(exponents.begin(), exponents.end(), e_.begin());
  recompute();
}

void Monomial::recompute() noexcept {
  base_deg_ = fiber_deg_ = total_ = 0;
  for (std::size_t i = 0; i < layout_.base; ++i) base_deg_ += e_[i];
  for (std::size_t i = layout_.base; i < std::size_t{layout_.base} + layout_.fiber; ++i)
    fiber_deg_ += e_[i];
  for (std::size_t i = 0; i < size(); ++i) total_ += e_[i];
}

void Monomial::set(std::size_t i, Exponent value) {
  e_[i] = value;
  recompute();
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (total_ > other.total_) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < size(); ++i)
    if (e_[i] != 0 && other.e_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const noexcept {
  Monomial out(layout_);
  for (std::size_t i = 0; i < size(); ++i) out.e_[i] = static_cast<Exponent>(e_[i] + o.e_[i]);
  out.base_deg_ = base_deg_ + o.base_deg_;
  out.fiber_deg_ = fiber_deg_ + o.fiber_deg_;
  out.total_ = total_ + o.total_;
  return out;
}

Monomial Monomial::operator/(const Monomial& o) const noexcept {
  Monomial out(layout_);
  for (std::size_t i = 0; i < size(); ++i) out.e_[i] = static_cast<Exponent>(e_[i] - o.e_[i]);
  out.base_deg_ = base_deg_ - o.base_deg_;
  out.fiber_deg_ = fiber_deg_ - o.fiber_deg_;
  out.total_ = total_ - o.total_;
  return out;
}

Monomial Monomial::lcm(const Monomial& o) const noexcept {
  Monomial out(layout_);
  for (std::size_t i = 0; i < size(); ++i) out.e_[i] = std::max(e_[i], o.e_[i]);
  out.recompute();
  return out;
}

Monomial Monomial::gcd(const Monomial& o) const noexcept {
  Monomial out(layout_);
  for (std::size_t i = 0; i < size(); ++i) out.e_[i] = std::min(e_[i], o.e_[i]);
  out.recompute();
  return out;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < size(); ++i) {
    h ^= e_[i];
    h *= 1099511628211ULL;
  }
  return h;
}

MonomialOrder MonomialOrder::standard(BlockLayout layout) {
  std::vector<Block> blocks;
  const auto b = layout.base;
  const auto f = static_cast<std::uint8_t>(layout.base + layout.fiber);
  const auto a = static_cast<std::uint8_t>(f + layout.aux);
  if (layout.aux) blocks.push_back({f, a});
  if (layout.fiber) blocks.push_back({b, f});
  if (layout.base) blocks.push_back({0, b});
  return MonomialOrder(std::move(blocks));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const noexcept {
  for (const Block& blk : blocks_) {
    std::uint32_t da = 0, db = 0;
    for (std::size_t i = blk.begin; i < blk.end; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = blk.end; i-- > blk.begin;) {
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
  }
  return 0;
}

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

}  // namespace

Ring RingContext::make(Field field, std::vector<std::string> base_names,
                       std::vector<std::string> fiber_names,
                       std::vector<std::string> aux_names) {
  auto ctx = std::shared_ptr<RingContext>(new RingContext());
  ctx->field_ = field;
  ctx->layout_.base = static_cast<std::uint8_t>(base_names.size());
  ctx->layout_.fiber = static_cast<std::uint8_t>(fiber_names.size());
  ctx->layout_.aux = static_cast<std::uint8_t>(aux_names.size());
  for (auto* block : {&base_names, &fiber_names, &aux_names})
    for (auto& n : *block) ctx->names_.push_back(std::move(n));
  if (ctx->names_.size() > kMaxVariables)
    throw InputError("at most " + std::to_string(kMaxVariables) + " variables are supported");
  std::set<std::string> seen;
  for (const auto& n : ctx->names_) {
    if (!valid_identifier(n)) throw InputError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw InputError("duplicate variable name '" + n + "'");
  }
  ctx->order_ = MonomialOrder::standard(ctx->layout_);
  return ctx;
}

Ring RingContext::standard(std::size_t rank, Field field) {
  std::vector<std::string> t;
  for (std::size_t i = 1; i <= rank; ++i) t.push_back("t" + std::to_string(i));
  return make(field, {"X", "Y"}, std::move(t));
}

std::optional<std::size_t> RingContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Ring RingContext::base_ring() const {
  return make(field_, {names_.begin(), names_.begin() + layout_.base});
}

Ring RingContext::with_fiber(std::size_t rank) const {
  std::vector<std::string> base(names_.begin(), names_.begin() + layout_.base);
  std::vector<std::string> t;
  for (std::size_t i = 1; i <= rank; ++i) {
    std::string n = "t" + std::to_string(i);
    while (std::find(base.begin(), base.end(), n) != base.end()) n = "_" + n;
    t.push_back(n);
  }
  return make(field_, std::move(base), std::move(t));
}

Ring RingContext::with_aux(std::vector<std::string> aux_names) const {
  std::vector<std::string> base(names_.begin(), names_.begin() + layout_.base);
  std::vector<std::string> fiber(names_.begin() + layout_.base,
                                 names_.begin() + layout_.base + layout_.fiber);
  std::vector<std::string> aux(names_.begin() + aux_begin(), names_.end());
  for (auto& n : aux_names) aux.push_back(std::move(n));
  return make(field_, std::move(base), std::move(fiber), std::move(aux));
}

Monomial RingContext::variable(std::size_t i) const {
  std::vector<Exponent> e(num_vars(), 0);
  e.at(i) = 1;
  return Monomial(layout_, e);
}

bool RingContext::same_as(const RingContext& other) const {
  return field_ == other.field_ && names_ == other.names_ && layout_ == other.layout_ &&
         order_ == other.order_;
}

void require_same_ring(const Ring& a, const Ring& b) {
  if (a == b) return;
  if (!a || !b || !a->same_as(*b)) throw ContextMismatch("operands belong to different rings");
}

}  // namespace reescalc
