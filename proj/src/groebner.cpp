#include "reescalc/groebner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace reescalc {

// ---------------------------------------------------------------------------
// Orders and conversions

ModuleOrder::ModuleOrder(MonomialOrder mono, PositionPolicy policy,
                         std::vector<std::uint32_t> priority)
    : mono_(std::move(mono)), policy_(policy), priority_(std::move(priority)) {}

int ModuleOrder::compare_components(std::uint32_t a, std::uint32_t b) const noexcept {
  if (a == b) return 0;
  std::uint32_t pa = a < priority_.size() ? priority_[a] : a;
  std::uint32_t pb = b < priority_.size() ? priority_[b] : b;
  // Higher priority (smaller rank) is the larger module monomial.
  return pa < pb ? 1 : -1;
}

int ModuleOrder::compare(const Monomial& a, std::uint32_t ca, const Monomial& b,
                         std::uint32_t cb) const noexcept {
  if (policy_ == PositionPolicy::kPositionOverTerm) {
    if (int c = compare_components(ca, cb)) return c;
    return mono_.compare(a, b);
  }
  if (int c = mono_.compare(a, b)) return c;
  return compare_components(ca, cb);
}

namespace {

bool term_greater(const ModuleOrder& order, const ModTerm& x, const ModTerm& y) {
  return order.compare(x.mono, x.comp, y.mono, y.comp) > 0;
}

void sort_terms(SparseVec& v, const ModuleOrder& order) {
  std::sort(v.begin(), v.end(),
            [&](const ModTerm& x, const ModTerm& y) { return term_greater(order, x, y); });
}

/// Returns p[start..] - c * m * g[1..]; assumes the leading terms cancel.
SparseVec sub_mul_tail(const SparseVec& p, std::size_t start, const Scalar& c, const Monomial& m,
                       const SparseVec& g, const ModuleOrder& order) {
  SparseVec out;
  out.reserve(p.size() - start + g.size());
  std::size_t i = start, j = 1;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial gm = g[j].mono * m;
    int cmp = (i == p.size()) ? -1 : order.compare(p[i].mono, p[i].comp, gm, g[j].comp);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, g[j].comp, -(c * g[j].coeff)});
      ++j;
    } else {
      Scalar s = p[i].coeff - c * g[j].coeff;
      if (!s.is_zero()) out.push_back({p[i].mono, p[i].comp, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

void make_monic(SparseVec& v) {
  if (v.empty() || v.front().coeff.is_one()) return;
  Scalar inv = v.front().coeff.inverse();
  for (auto& t : v) t.coeff *= inv;
}

bool single_component(const SparseVec& v) {
  for (const auto& t : v)
    if (t.comp != v.front().comp) return false;
  return true;
}

/// Division lookup keyed by component.
class ReducerIndex {
 public:
  void reset(std::size_t rank) { by_comp_.assign(rank, {}); }
  void insert(std::uint32_t comp, std::uint32_t idx) { by_comp_.at(comp).push_back(idx); }
  void erase(std::uint32_t comp, std::uint32_t idx) {
    auto& v = by_comp_.at(comp);
    v.erase(std::remove(v.begin(), v.end(), idx), v.end());
  }
  template <class LeadFn>
  std::optional<std::uint32_t> find(const Monomial& m, std::uint32_t comp, LeadFn&& lead,
                                    std::optional<std::uint32_t> skip = std::nullopt) const {
    if (comp >= by_comp_.size()) return std::nullopt;
    for (std::uint32_t idx : by_comp_[comp]) {
      if (skip && *skip == idx) continue;
      if (lead(idx).divides(m)) return idx;
    }
    return std::nullopt;
  }

 private:
  std::vector<std::vector<std::uint32_t>> by_comp_;
};

/// Full reduction of v against monic `basis` elements listed in `index`.
SparseVec reduce_with(SparseVec v, const std::vector<const SparseVec*>& basis,
                      const ReducerIndex& index, const ModuleOrder& order,
                      std::optional<std::uint32_t> skip = std::nullopt) {
  SparseVec result;
  std::size_t i = 0;
  auto lead = [&](std::uint32_t idx) -> const Monomial& { return basis[idx]->front().mono; };
  while (i < v.size()) {
    auto r = index.find(v[i].mono, v[i].comp, lead, skip);
    if (!r) {
      result.push_back(std::move(v[i]));
      ++i;
      continue;
    }
    const SparseVec& g = *basis[*r];
    Monomial q = v[i].mono / g.front().mono;
    Scalar c = v[i].coeff;
    v = sub_mul_tail(v, i + 1, c, q, g, order);
    i = 0;
  }
  return result;
}

}  // namespace

SparseVec to_sparse(const PolyVector& v, const ModuleOrder& order) {
  SparseVec out;
  for (std::size_t c = 0; c < v.size(); ++c)
    for (const auto& t : v[c].terms()) out.push_back({t.mono, static_cast<std::uint32_t>(c), t.coeff});
  sort_terms(out, order);
  return out;
}

PolyVector to_dense(const SparseVec& v, const Ring& ring, std::size_t rank) {
  std::vector<std::vector<Term>> buckets(rank);
  for (const auto& t : v) buckets.at(t.comp).push_back({t.mono, t.coeff});
  PolyVector out;
  out.reserve(rank);
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(ring, std::move(b)));
  return out;
}

WorkCounters& work_counters() {
  static WorkCounters counters;
  return counters;
}

void reset_work_counters() {
  auto& c = work_counters();
  c.groebner_runs = 0;
  c.pairs_reduced = 0;
  c.reductions_to_zero = 0;
}

// ---------------------------------------------------------------------------
// Buchberger engine

struct GroebnerEngine::Impl {
  struct Elem {
    SparseVec v;
    bool active = true;
    bool single_comp = true;
    bool single_term = true;
  };
  struct Pair {
    std::uint32_t i, j;
    Monomial lcm;
    std::uint32_t comp;
  };

  Ring ring;
  std::size_t rank;
  ModuleOrder order;
  Deadline deadline;
  std::vector<Elem> elems;
  std::vector<const SparseVec*> views;
  std::vector<Pair> pairs;
  ReducerIndex index;

  // Min-heap on lcm: comparator says "a after b".
  bool pair_after(const Pair& a, const Pair& b) const {
    int c = order.compare(a.lcm, a.comp, b.lcm, b.comp);
    if (c != 0) return c > 0;
    if (a.j != b.j) return a.j > b.j;
    return a.i > b.i;
  }
  void heapify() {
    std::make_heap(pairs.begin(), pairs.end(),
                   [&](const Pair& a, const Pair& b) { return pair_after(a, b); });
  }

  const Monomial& lead(std::uint32_t idx) const { return elems[idx].v.front().mono; }
  std::uint32_t lead_comp(std::uint32_t idx) const { return elems[idx].v.front().comp; }

  SparseVec reduce(SparseVec v) const { return reduce_with(std::move(v), views, index, order); }

  void insert(SparseVec v) {
    make_monic(v);
    const auto h = static_cast<std::uint32_t>(elems.size());
    Elem e;
    e.single_comp = single_component(v);
    e.single_term = v.size() == 1;
    e.v = std::move(v);
    elems.push_back(std::move(e));
    views.clear();
    for (auto& el : elems) views.push_back(&el.v);
    update(h);
  }

  void update(std::uint32_t h) {
    const Monomial& lh = lead(h);
    const std::uint32_t ch = lead_comp(h);

    struct Cand {
      std::uint32_t g;
      Monomial lcm;
      bool coprime;
      bool useless;
      bool alive = true;
      bool in_d = false;
    };
    std::vector<Cand> cands;
    for (std::uint32_t g = 0; g < h; ++g) {
      if (!elems[g].active || lead_comp(g) != ch) continue;
      Cand c{g, lh.lcm(lead(g)), false, false};
      bool product_ok = elems[g].single_comp && elems[h].single_comp;
      c.coprime = product_ok && lh.coprime(lead(g));
      c.useless = elems[g].single_term && elems[h].single_term;
      cands.push_back(std::move(c));
    }
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (cands[a].coprime) {
        cands[a].in_d = true;
        continue;
      }
      bool dominated = false;
      for (std::size_t b = 0; b < cands.size() && !dominated; ++b) {
        if (b == a || !cands[b].alive) continue;
        if (b < a && !cands[b].in_d) continue;
        if (cands[b].lcm.divides(cands[a].lcm)) dominated = true;
      }
      if (dominated)
        cands[a].alive = false;
      else
        cands[a].in_d = true;
    }

    std::vector<Pair> kept;
    kept.reserve(pairs.size() + cands.size());
    for (auto& p : pairs) {
      if (p.comp == ch && lh.divides(p.lcm)) {
        Monomial li = lh.lcm(lead(p.i));
        Monomial lj = lh.lcm(lead(p.j));
        if (!(li == p.lcm) && !(lj == p.lcm)) continue;
      }
      kept.push_back(std::move(p));
    }
    pairs = std::move(kept);
    for (auto& c : cands)
      if (c.in_d && !c.coprime && !c.useless) pairs.push_back({c.g, h, c.lcm, ch});
    heapify();

    for (std::uint32_t g = 0; g < h; ++g) {
      if (elems[g].active && lead_comp(g) == ch && lh.divides(lead(g))) {
        elems[g].active = false;
        index.erase(ch, g);
      }
    }
    index.insert(ch, h);
  }

  SparseVec spoly(const Pair& p) const {
    const SparseVec& a = elems[p.i].v;
    const SparseVec& b = elems[p.j].v;
    Monomial ma = p.lcm / a.front().mono;
    Monomial mb = p.lcm / b.front().mono;
    SparseVec sa;
    sa.reserve(a.size());
    for (const auto& t : a) sa.push_back({t.mono * ma, t.comp, t.coeff});
    // Both elements are monic, so the leading terms cancel.
    return sub_mul_tail(sa, 1, Scalar::one(ring->field()), mb, b, order);
  }
};

GroebnerEngine::GroebnerEngine(Ring ring, std::size_t rank, ModuleOrder order, Deadline deadline)
    : impl_(std::make_unique<Impl>()) {
  impl_->ring = std::move(ring);
  impl_->rank = rank;
  impl_->order = std::move(order);
  impl_->deadline = deadline;
  impl_->index.reset(rank);
  work_counters().groebner_runs++;
}

GroebnerEngine::~GroebnerEngine() = default;
GroebnerEngine::GroebnerEngine(GroebnerEngine&&) noexcept = default;
GroebnerEngine& GroebnerEngine::operator=(GroebnerEngine&&) noexcept = default;

const ModuleOrder& GroebnerEngine::order() const noexcept { return impl_->order; }

bool GroebnerEngine::add(SparseVec v) {
  v = impl_->reduce(std::move(v));
  if (v.empty()) return false;
  impl_->insert(std::move(v));
  return true;
}

void GroebnerEngine::complete() {
  auto& I = *impl_;
  while (!I.pairs.empty()) {
    I.deadline.check();
    std::pop_heap(I.pairs.begin(), I.pairs.end(),
                  [&](const Impl::Pair& a, const Impl::Pair& b) { return I.pair_after(a, b); });
    Impl::Pair p = std::move(I.pairs.back());
    I.pairs.pop_back();
    SparseVec s = I.reduce(I.spoly(p));
    work_counters().pairs_reduced++;
    if (s.empty()) {
      work_counters().reductions_to_zero++;
      continue;
    }
    I.insert(std::move(s));
  }
}

SparseVec GroebnerEngine::reduce(SparseVec v) const { return impl_->reduce(std::move(v)); }

std::vector<SparseVec> GroebnerEngine::reduced_basis() const {
  const auto& I = *impl_;
  std::vector<SparseVec> out;
  for (std::uint32_t k = 0; k < I.elems.size(); ++k) {
    if (!I.elems[k].active) continue;
    SparseVec v = reduce_with(I.elems[k].v, I.views, I.index, I.order, k);
    make_monic(v);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), [&](const SparseVec& a, const SparseVec& b) {
    return term_greater(I.order, b.front(), a.front());
  });
  return out;
}

// ---------------------------------------------------------------------------
// Submodule

struct Submodule::Cache {
  std::mutex mu;
  std::shared_ptr<const GroebnerBasis> basis;
};

Submodule::Submodule(Ring ring, std::size_t rank, std::vector<PolyVector> generators)
    : ring_(std::move(ring)), rank_(rank), gens_(std::move(generators)),
      cache_(std::make_shared<Cache>()) {
  for (auto& g : gens_) {
    if (g.size() != rank_) throw ContextMismatch("generator length differs from module rank");
    for (auto& p : g) {
      if (!p.ring()) p = Polynomial(ring_);
      else require_same_ring(p.ring(), ring_);
    }
  }
}

Submodule Submodule::ideal(Ring ring, std::vector<Polynomial> generators) {
  std::vector<PolyVector> gens;
  gens.reserve(generators.size());
  for (auto& g : generators) gens.push_back({std::move(g)});
  return Submodule(std::move(ring), 1, std::move(gens));
}

Submodule Submodule::ambient(Ring ring, std::size_t rank) {
  std::vector<PolyVector> gens;
  for (std::size_t c = 0; c < rank; ++c) {
    PolyVector v(rank, Polynomial(ring));
    v[c] = Polynomial::constant(ring, 1);
    gens.push_back(std::move(v));
  }
  return Submodule(ring, rank, std::move(gens));
}

Submodule Submodule::maximal_ideal_power(Ring ring, unsigned k) {
  const std::size_t nb = ring->num_base();
  std::vector<Polynomial> gens;
  std::vector<Exponent> e(ring->num_vars(), 0);
  // Enumerate compositions of k into nb parts.
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == nb) {
      e[i] = static_cast<Exponent>(left);
      gens.push_back(Polynomial::monomial(ring, Monomial(ring->layout(), e)));
      return;
    }
    for (unsigned a = left + 1; a-- > 0;) {
      e[i] = static_cast<Exponent>(a);
      rec(i + 1, left - a);
    }
  };
  if (nb == 0) return ideal(ring, {Polynomial::constant(ring, 1)});
  rec(0, k);
  return ideal(ring, std::move(gens));
}

std::vector<Polynomial> Submodule::ideal_generators() const {
  if (rank_ != 1) throw PreconditionError("ideal_generators on a module of rank != 1");
  std::vector<Polynomial> out;
  for (const auto& g : gens_) out.push_back(g[0]);
  return out;
}

bool Submodule::is_monomial() const {
  for (const auto& g : gens_) {
    std::size_t terms = 0;
    for (const auto& p : g) terms += p.size();
    if (terms > 1) return false;
  }
  return true;
}

bool Submodule::has_nonzero_generator() const {
  for (const auto& g : gens_)
    for (const auto& p : g)
      if (!p.is_zero()) return true;
  return false;
}

const GroebnerBasis& Submodule::basis(const Deadline& deadline) const {
  if (!cache_) const_cast<Submodule*>(this)->cache_ = std::make_shared<Cache>();
  {
    std::lock_guard lock(cache_->mu);
    if (cache_->basis) return *cache_->basis;
  }
  ModuleOrder order = ModuleOrder::term_over_position(*ring_);
  auto gb = std::make_shared<GroebnerBasis>();
  gb->order = order;
  std::vector<SparseVec> input;
  for (const auto& g : gens_) {
    SparseVec v = to_sparse(g, order);
    if (!v.empty()) input.push_back(std::move(v));
  }
  std::sort(input.begin(), input.end(), [&](const SparseVec& a, const SparseVec& b) {
    return term_greater(order, b.front(), a.front());
  });
  GroebnerEngine engine(ring_, rank_, order, deadline);
  for (auto& v : input) engine.add(std::move(v));
  engine.complete();
  gb->elements = engine.reduced_basis();
  std::lock_guard lock(cache_->mu);
  if (!cache_->basis) cache_->basis = std::move(gb);
  return *cache_->basis;
}

Submodule Submodule::reduced() const {
  const auto& gb = basis();
  std::vector<PolyVector> gens;
  for (const auto& e : gb.elements) gens.push_back(to_dense(e, ring_, rank_));
  Submodule out(ring_, rank_, std::move(gens));
  std::lock_guard lock(out.cache_->mu);
  out.cache_->basis = std::make_shared<GroebnerBasis>(gb);
  return out;
}

std::string Submodule::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) out += ", ";
    if (rank_ == 1) {
      out += gens_[i][0].to_string();
    } else {
      out += "(";
      for (std::size_t c = 0; c < rank_; ++c) {
        if (c) out += ", ";
        out += gens_[i][c].to_string();
      }
      out += ")";
    }
  }
  return out + ">";
}

// ---------------------------------------------------------------------------
// Derived operations

namespace {

void require_compatible(const Submodule& u, const Submodule& v) {
  require_same_ring(u.ring(), v.ring());
  if (u.rank() != v.rank()) throw ContextMismatch("submodules of free modules of different rank");
}

SparseVec reduce_by_basis(SparseVec v, const GroebnerBasis& gb, std::size_t rank) {
  std::vector<const SparseVec*> views;
  ReducerIndex index;
  index.reset(rank);
  for (std::uint32_t k = 0; k < gb.elements.size(); ++k) {
    views.push_back(&gb.elements[k]);
    index.insert(gb.elements[k].front().comp, k);
  }
  return reduce_with(std::move(v), views, index, gb.order);
}

std::vector<Monomial> leading_monomials(const Submodule& u, std::uint32_t comp) {
  std::vector<Monomial> out;
  for (const auto& e : u.basis().elements)
    if (e.front().comp == comp) out.push_back(e.front().mono);
  return out;
}

struct MonoGen {
  Monomial mono;
  std::uint32_t comp;
};

std::vector<MonoGen> monomial_generators(const Submodule& u) {
  std::vector<MonoGen> out;
  for (const auto& g : u.generators())
    for (std::size_t c = 0; c < g.size(); ++c)
      if (!g[c].is_zero()) out.push_back({g[c].leading().mono, static_cast<std::uint32_t>(c)});
  return out;
}

Submodule from_monomials(const Ring& ring, std::size_t rank, std::vector<MonoGen> gens) {
  const auto& order = ring->order();
  std::sort(gens.begin(), gens.end(), [&](const MonoGen& a, const MonoGen& b) {
    if (a.comp != b.comp) return a.comp < b.comp;
    if (a.mono.total_degree() != b.mono.total_degree())
      return a.mono.total_degree() < b.mono.total_degree();
    return order.compare(a.mono, b.mono) < 0;
  });
  std::vector<MonoGen> kept;
  for (auto& g : gens) {
    bool redundant = false;
    for (const auto& k : kept)
      if (k.comp == g.comp && k.mono.divides(g.mono)) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(g);
  }
  std::sort(kept.begin(), kept.end(), [&](const MonoGen& a, const MonoGen& b) {
    if (a.comp != b.comp) return a.comp < b.comp;
    return order.compare(a.mono, b.mono) < 0;
  });
  std::vector<PolyVector> vecs;
  vecs.reserve(kept.size());
  for (const auto& k : kept) {
    PolyVector v(rank, Polynomial(ring));
    v[k.comp] = Polynomial::monomial(ring, k.mono);
    vecs.push_back(std::move(v));
  }
  return Submodule(ring, rank, std::move(vecs));
}

Polynomial strip_aux(const Polynomial& p, const Ring& target) { return p.transfer(target); }

}  // namespace

Submodule minimalize_monomial(const Submodule& u) {
  if (!u.is_monomial()) throw PreconditionError("minimalize_monomial on a non-monomial module");
  return from_monomials(u.ring(), u.rank(), monomial_generators(u));
}

Submodule groebner_basis(const Submodule& u, const ModuleOrder& order, const Deadline& deadline) {
  if (order == ModuleOrder::term_over_position(*u.ring())) {
    u.basis(deadline);
    return u.reduced();
  }
  GroebnerEngine engine(u.ring(), u.rank(), order, deadline);
  for (const auto& g : u.generators()) engine.add(to_sparse(g, order));
  engine.complete();
  std::vector<PolyVector> gens;
  for (const auto& e : engine.reduced_basis()) gens.push_back(to_dense(e, u.ring(), u.rank()));
  return Submodule(u.ring(), u.rank(), std::move(gens));
}

PolyVector normal_form(const PolyVector& v, const Submodule& u) {
  if (v.size() != u.rank()) throw ContextMismatch("vector length differs from module rank");
  for (const auto& p : v)
    if (!p.is_zero()) require_same_ring(p.ring(), u.ring());
  const auto& gb = u.basis();
  return to_dense(reduce_by_basis(to_sparse(v, gb.order), gb, u.rank()), u.ring(), u.rank());
}

bool is_member(const PolyVector& v, const Submodule& u) {
  if (v.size() != u.rank()) throw ContextMismatch("vector length differs from module rank");
  const auto& gb = u.basis();
  return reduce_by_basis(to_sparse(v, gb.order), gb, u.rank()).empty();
}

bool contains(const Submodule& u, const Submodule& v) {
  require_compatible(u, v);
  if (u.is_monomial() && v.is_monomial()) {
    auto ug = monomial_generators(u);
    for (const auto& g : monomial_generators(v)) {
      bool hit = std::any_of(ug.begin(), ug.end(), [&](const MonoGen& a) {
        return a.comp == g.comp && a.mono.divides(g.mono);
      });
      if (!hit) return false;
    }
    return true;
  }
  for (const auto& g : v.generators())
    if (!is_member(g, u)) return false;
  return true;
}

bool equal(const Submodule& u, const Submodule& v) { return contains(u, v) && contains(v, u); }

Submodule sum(const Submodule& u, const Submodule& v) {
  require_compatible(u, v);
  std::vector<PolyVector> gens = u.generators();
  gens.insert(gens.end(), v.generators().begin(), v.generators().end());
  return Submodule(u.ring(), u.rank(), std::move(gens));
}

Submodule ideal_times(const Submodule& j, const Submodule& u) {
  require_same_ring(j.ring(), u.ring());
  if (j.rank() != 1) throw PreconditionError("ideal_times expects an ideal as first argument");
  std::vector<PolyVector> gens;
  for (const auto& f : j.generators()) {
    if (f[0].is_zero()) continue;
    for (const auto& g : u.generators()) {
      PolyVector v;
      v.reserve(u.rank());
      for (const auto& p : g) v.push_back(f[0] * p);
      gens.push_back(std::move(v));
    }
  }
  Submodule out(u.ring(), u.rank(), std::move(gens));
  return out.is_monomial() ? minimalize_monomial(out) : out;
}

Submodule intersect(const Submodule& u, const Submodule& v, const Deadline& deadline) {
  require_compatible(u, v);
  const Ring& ring = u.ring();
  if (!u.has_nonzero_generator() || !v.has_nonzero_generator()) return Submodule::zero(ring, u.rank());
  if (u.is_monomial() && v.is_monomial()) {
    std::vector<MonoGen> out;
    auto ug = monomial_generators(minimalize_monomial(u));
    auto vg = monomial_generators(minimalize_monomial(v));
    for (const auto& a : ug)
      for (const auto& b : vg)
        if (a.comp == b.comp) out.push_back({a.mono.lcm(b.mono), a.comp});
    return from_monomials(ring, u.rank(), std::move(out));
  }
  std::string wname = "_w";
  while (ring->index_of(wname)) wname = "_" + wname;
  Ring ext = ring->with_aux({wname});
  Polynomial w = Polynomial::variable(ext, *ext->index_of(wname));
  Polynomial one_minus_w = Polynomial::constant(ext, 1) - w;
  ModuleOrder order = ModuleOrder::term_over_position(*ext);
  GroebnerEngine engine(ext, u.rank(), order, deadline);
  auto lift = [&](const PolyVector& g, const Polynomial& f) {
    PolyVector out;
    for (const auto& p : g) out.push_back(f * p.transfer(ext));
    return out;
  };
  for (const auto& g : u.generators()) engine.add(to_sparse(lift(g, w), order));
  for (const auto& g : v.generators()) engine.add(to_sparse(lift(g, one_minus_w), order));
  engine.complete();
  const std::size_t aux_idx = *ext->index_of(wname);
  std::vector<PolyVector> gens;
  for (const auto& e : engine.reduced_basis()) {
    if (e.front().mono[aux_idx] != 0) continue;
    PolyVector dense = to_dense(e, ext, u.rank());
    PolyVector back;
    for (const auto& p : dense) back.push_back(strip_aux(p, ring));
    gens.push_back(std::move(back));
  }
  return Submodule(ring, u.rank(), std::move(gens));
}

Submodule eliminate(const Submodule& u, const std::vector<std::string>& vars,
                    const Deadline& deadline) {
  const Ring& ring = u.ring();
  std::vector<std::string> base, fiber, aux;
  std::vector<bool> elim(ring->num_vars(), false);
  for (const auto& name : vars) {
    auto idx = ring->index_of(name);
    if (!idx) throw ContextMismatch("eliminate: unknown variable '" + name + "'");
    elim[*idx] = true;
  }
  for (std::size_t i = 0; i < ring->num_vars(); ++i) {
    if (elim[i]) aux.push_back(ring->name(i));
    else if (i < ring->num_base()) base.push_back(ring->name(i));
    else if (i < ring->aux_begin()) fiber.push_back(ring->name(i));
    else aux.push_back(ring->name(i));
  }
  Ring ext = RingContext::make(ring->field(), base, fiber, aux);
  ModuleOrder order = ModuleOrder::term_over_position(*ext);
  GroebnerEngine engine(ext, u.rank(), order, deadline);
  for (const auto& g : u.generators()) {
    PolyVector lifted;
    for (const auto& p : g) lifted.push_back(p.transfer(ext));
    engine.add(to_sparse(lifted, order));
  }
  engine.complete();
  std::vector<PolyVector> gens;
  const std::size_t ab = ext->aux_begin();
  for (const auto& e : engine.reduced_basis()) {
    bool free_of = true;
    for (std::size_t i = ab; i < ext->num_vars(); ++i)
      if (e.front().mono[i]) free_of = false;
    if (!free_of) continue;
    PolyVector dense = to_dense(e, ext, u.rank());
    PolyVector back;
    for (const auto& p : dense) back.push_back(p.transfer(ring));
    gens.push_back(std::move(back));
  }
  return Submodule(ring, u.rank(), std::move(gens));
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw PreconditionError("exact_divide by zero");
  require_same_ring(f.ring() ? f.ring() : g.ring(), g.ring());
  const Ring& ring = g.ring();
  Polynomial rem = f;
  std::vector<Term> quotient;
  const Term& lg = g.leading();
  Scalar inv = lg.coeff.inverse();
  while (!rem.is_zero()) {
    const Term& lt = rem.leading();
    if (!lg.mono.divides(lt.mono)) throw PreconditionError("exact_divide: divisor does not divide");
    Monomial q = lt.mono / lg.mono;
    Scalar c = lt.coeff * inv;
    quotient.push_back({q, c});
    rem -= g.times(q, c);
  }
  return Polynomial::from_terms(ring, std::move(quotient));
}

namespace {

Submodule colon_by_element(const Submodule& u, const Polynomial& g, const Deadline& deadline) {
  const Ring& ring = u.ring();
  if (g.is_constant()) return u;
  if (u.is_monomial() && g.is_monomial()) {
    std::vector<MonoGen> out;
    const Monomial& gm = g.leading().mono;
    for (const auto& m : monomial_generators(u)) out.push_back({m.mono / m.mono.gcd(gm), m.comp});
    return from_monomials(ring, u.rank(), std::move(out));
  }
  std::vector<PolyVector> gf;
  for (std::size_t c = 0; c < u.rank(); ++c) {
    PolyVector v(u.rank(), Polynomial(ring));
    v[c] = g;
    gf.push_back(std::move(v));
  }
  Submodule inter = intersect(u, Submodule(ring, u.rank(), std::move(gf)), deadline);
  std::vector<PolyVector> gens;
  for (const auto& h : inter.generators()) {
    PolyVector q;
    for (const auto& p : h) q.push_back(exact_divide(p, g));
    gens.push_back(std::move(q));
  }
  return Submodule(ring, u.rank(), std::move(gens));
}

}  // namespace

Submodule colon(const Submodule& u, const Submodule& j, ColonFlags* flags,
                const Deadline& deadline) {
  require_same_ring(u.ring(), j.ring());
  if (j.rank() != 1) throw PreconditionError("colon: the second argument must be an ideal");
  std::vector<Polynomial> gens;
  for (const auto& g : j.generators())
    if (!g[0].is_zero()) gens.push_back(g[0]);
  if (gens.empty()) {
    if (flags) flags->colon_by_zero_ideal = true;
    return Submodule::ambient(u.ring(), u.rank());
  }
  if (!u.has_nonzero_generator()) return u;
  std::optional<Submodule> acc;
  for (const auto& g : gens) {
    deadline.check();
    Submodule part = colon_by_element(u, g, deadline);
    acc = acc ? intersect(*acc, part, deadline) : part;
  }
  return *acc;
}

Submodule saturate(const Submodule& u, const Submodule& j, ColonFlags* flags,
                   const Deadline& deadline) {
  Submodule current = u;
  for (int iter = 0; iter < 10000; ++iter) {
    deadline.check();
    Submodule next = colon(current, j, flags, deadline);
    if (contains(current, next)) return current;
    current = next.is_monomial() ? minimalize_monomial(next) : next;
  }
  throw Error("saturate: chain did not stabilize");
}

Submodule preimage(const Submodule& w, const std::vector<PolyVector>& images, const Submodule& n,
                   const Deadline& deadline) {
  if (images.size() != w.generators().size())
    throw ContextMismatch("preimage: one image per generator required");
  const Ring& ring = w.ring();
  const std::size_t b = n.rank();
  const std::size_t s = images.size();
  ModuleOrder order(ring->order(), PositionPolicy::kPositionOverTerm);
  GroebnerEngine engine(ring, b + s, order, deadline);
  for (std::size_t j = 0; j < s; ++j) {
    if (images[j].size() != b) throw ContextMismatch("preimage: image rank mismatch");
    PolyVector v(b + s, Polynomial(ring));
    for (std::size_t c = 0; c < b; ++c) v[c] = images[j][c];
    v[b + j] = Polynomial::constant(ring, 1);
    engine.add(to_sparse(v, order));
  }
  for (const auto& g : n.generators()) {
    PolyVector v(b + s, Polynomial(ring));
    for (std::size_t c = 0; c < b; ++c) v[c] = g[c];
    engine.add(to_sparse(v, order));
  }
  engine.complete();
  std::vector<PolyVector> gens;
  for (const auto& e : engine.reduced_basis()) {
    if (e.front().comp < b) continue;
    PolyVector out(w.rank(), Polynomial(ring));
    for (const auto& t : e) {
      const auto& wj = w.generators()[t.comp - b];
      for (std::size_t c = 0; c < w.rank(); ++c)
        if (!wj[c].is_zero()) out[c] += wj[c].times(t.mono, t.coeff);
    }
    bool nonzero = std::any_of(out.begin(), out.end(), [](const Polynomial& p) { return !p.is_zero(); });
    if (nonzero) gens.push_back(std::move(out));
  }
  return Submodule(ring, w.rank(), std::move(gens));
}

Submodule prune_generators(const Submodule& u, const Deadline& deadline) {
  if (u.is_monomial()) return minimalize_monomial(u);
  ModuleOrder order = ModuleOrder::term_over_position(*u.ring());
  std::vector<std::pair<SparseVec, std::size_t>> items;
  for (std::size_t i = 0; i < u.generators().size(); ++i) {
    SparseVec v = to_sparse(u.generators()[i], order);
    if (!v.empty()) items.emplace_back(std::move(v), i);
  }
  std::stable_sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
    auto da = a.first.back().mono.total_degree();
    auto db = b.first.back().mono.total_degree();
    if (da != db) return da < db;
    return term_greater(order, b.first.front(), a.first.front());
  });
  GroebnerEngine engine(u.ring(), u.rank(), order, deadline);
  std::vector<PolyVector> kept;
  for (auto& [v, i] : items) {
    if (engine.add(v)) {
      kept.push_back(u.generators()[i]);
      engine.complete();
    }
  }
  return Submodule(u.ring(), u.rank(), std::move(kept));
}

std::optional<std::uint64_t> relative_length(const Submodule& w, const Submodule& u) {
  require_compatible(w, u);
  const std::size_t nv = u.ring()->num_vars();
  std::uint64_t count = 0;
  for (std::uint32_t c = 0; c < u.rank(); ++c) {
    std::vector<Monomial> lw = leading_monomials(w, c);
    std::vector<Monomial> lu = leading_monomials(u, c);
    if (lw.empty()) continue;
    Exponent bound = 0;
    for (const auto* list : {&lw, &lu})
      for (const auto& m : *list)
        for (std::size_t i = 0; i < nv; ++i) bound = std::max(bound, m[i]);
    bound = static_cast<Exponent>(bound + 1);
    std::vector<Exponent> e(nv, 0);
    const Monomial probe_layout = u.ring()->one();
    for (;;) {
      Monomial m(probe_layout.layout(), e);
      bool in_w = std::any_of(lw.begin(), lw.end(), [&](const Monomial& l) { return l.divides(m); });
      if (in_w) {
        bool in_u = std::any_of(lu.begin(), lu.end(), [&](const Monomial& l) { return l.divides(m); });
        if (!in_u) {
          if (std::find(e.begin(), e.end(), bound) != e.end()) return std::nullopt;
          ++count;
        }
      }
      std::size_t i = 0;
      while (i < nv && e[i] == bound) e[i++] = 0;
      if (i == nv) break;
      ++e[i];
    }
  }
  return count;
}

std::optional<std::uint64_t> colength(const Submodule& u) {
  return relative_length(Submodule::ambient(u.ring(), u.rank()), u);
}

}  // namespace reescalc
