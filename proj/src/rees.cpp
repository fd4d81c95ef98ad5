#include "reescalc/rees.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace reescalc {

// ---------------------------------------------------------------------------
// FiberBasis

FiberBasis::FiberBasis(const Ring& s, unsigned degree) : degree_(degree) {
  const std::size_t r = s->num_fiber();
  const std::size_t f0 = s->fiber_begin();
  std::vector<Exponent> e(s->num_vars(), 0);
  // Enumerate compositions of `degree` into r parts.
  std::vector<Exponent> parts(r, 0);
  auto emit = [&]() {
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t i = 0; i < r; ++i) e[f0 + i] = parts[i];
    monos_.emplace_back(s->layout(), e);
  };
  if (r == 0) {
    if (degree == 0) emit();
  } else {
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (i + 1 == r) {
        parts[i] = static_cast<Exponent>(left);
        emit();
        return;
      }
      for (unsigned k = 0; k <= left; ++k) {
        parts[i] = static_cast<Exponent>(k);
        rec(i + 1, left - k);
      }
    };
    rec(0, degree);
  }
  const auto& order = s->order();
  std::sort(monos_.begin(), monos_.end(),
            [&](const Monomial& a, const Monomial& b) { return order.compare(a, b) > 0; });
  for (std::size_t k = 0; k < monos_.size(); ++k) sorted_.emplace_back(monos_[k], k);
  auto lex = [](const std::pair<Monomial, std::size_t>& a, const std::pair<Monomial, std::size_t>& b) {
    auto ea = a.first.exponents(), eb = b.first.exponents();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  };
  std::sort(sorted_.begin(), sorted_.end(), lex);
}

std::optional<std::size_t> FiberBasis::index_of(const Monomial& m) const {
  auto em = m.exponents();
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), em, [](const auto& a, std::span<const Exponent> b) {
    auto ea = a.first.exponents();
    return std::lexicographical_compare(ea.begin(), ea.end(), b.begin(), b.end());
  });
  if (it == sorted_.end() || !(it->first == m)) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// ModuleEmbedding

struct ModuleEmbedding::State {
  Ring base;
  Ring rees;
  std::size_t rank = 0;
  std::vector<PolyVector> columns;
  Submodule module;
  Submodule rees_ideal;
  mutable std::mutex mu;
  mutable std::map<unsigned, FiberBasis> bases;
  mutable std::map<unsigned, GradedPiece> powers;
  mutable std::optional<std::optional<std::uint64_t>> colength;
};

namespace {

Submodule tidy(const Submodule& u, const Deadline& deadline) {
  if (u.is_monomial()) return minimalize_monomial(u);
  return prune_generators(u, deadline);
}

bool is_zero_vector(const PolyVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

}  // namespace

ModuleEmbedding::ModuleEmbedding(Ring base, std::size_t rank, std::vector<PolyVector> columns) {
  if (!base) throw InputError("embedding needs a ring");
  if (rank == 0) throw InputError("the free module must have positive rank");
  if (base->num_fiber() != 0 || base->num_aux() != 0)
    throw InputError("the base ring must not have fiber variables");
  for (auto& c : columns) {
    if (c.size() != rank) throw InputError("every column must have exactly " + std::to_string(rank) + " entries");
    for (auto& p : c) {
      if (!p.ring()) p = Polynomial(base);
      require_same_ring(p.ring(), base);
      if (!p.only_base_variables()) throw InputError("matrix entries must use base variables only");
    }
  }
  state_ = std::make_shared<State>();
  state_->base = base;
  state_->rees = base->with_fiber(rank);
  state_->rank = rank;
  state_->columns = std::move(columns);
  state_->module = Submodule(base, rank, state_->columns);
  std::vector<Polynomial> forms;
  for (const auto& c : state_->columns) {
    auto f = linear_form(c);
    if (!f.is_zero()) forms.push_back(std::move(f));
  }
  state_->rees_ideal = Submodule::ideal(state_->rees, std::move(forms));
}

ModuleEmbedding ModuleEmbedding::from_rows(Ring base, const std::vector<std::vector<Polynomial>>& rows) {
  if (rows.empty()) throw InputError("generator matrix has no rows");
  const std::size_t m = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != m) throw InputError("generator matrix rows have different lengths");
  std::vector<PolyVector> cols(m, PolyVector(rows.size(), Polynomial(base)));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) cols[j][i] = rows[i][j];
  return ModuleEmbedding(std::move(base), rows.size(), std::move(cols));
}

ModuleEmbedding ModuleEmbedding::from_ideal(const Submodule& ideal) {
  if (!ideal.is_ideal()) throw PreconditionError("from_ideal expects an ideal");
  return ModuleEmbedding(ideal.ring(), 1, ideal.generators());
}

ModuleEmbedding ModuleEmbedding::from_submodule(const Submodule& m) {
  return ModuleEmbedding(m.ring(), m.rank(), m.generators());
}

ModuleEmbedding ModuleEmbedding::direct_sum(const ModuleEmbedding& a, const ModuleEmbedding& b) {
  require_same_ring(a.base_ring(), b.base_ring());
  const std::size_t r = a.rank() + b.rank();
  std::vector<PolyVector> cols;
  for (const auto& c : a.columns()) {
    PolyVector v(r, Polynomial(a.base_ring()));
    std::copy(c.begin(), c.end(), v.begin());
    cols.push_back(std::move(v));
  }
  for (const auto& c : b.columns()) {
    PolyVector v(r, Polynomial(a.base_ring()));
    std::copy(c.begin(), c.end(), v.begin() + static_cast<std::ptrdiff_t>(a.rank()));
    cols.push_back(std::move(v));
  }
  return ModuleEmbedding(a.base_ring(), r, std::move(cols));
}

const Ring& ModuleEmbedding::base_ring() const { return state_->base; }
const Ring& ModuleEmbedding::rees_ring() const { return state_->rees; }
std::size_t ModuleEmbedding::rank() const { return state_->rank; }
const std::vector<PolyVector>& ModuleEmbedding::columns() const { return state_->columns; }
const Submodule& ModuleEmbedding::module() const { return state_->module; }
const Submodule& ModuleEmbedding::rees_ideal() const { return state_->rees_ideal; }
bool ModuleEmbedding::is_zero() const { return !state_->module.has_nonzero_generator(); }

std::optional<std::uint64_t> ModuleEmbedding::colength() const {
  {
    std::lock_guard lock(state_->mu);
    if (state_->colength) return *state_->colength;
  }
  auto value = reescalc::colength(state_->module);
  std::lock_guard lock(state_->mu);
  state_->colength = value;
  return value;
}

const FiberBasis& ModuleEmbedding::fiber_basis(unsigned n) const {
  std::lock_guard lock(state_->mu);
  auto it = state_->bases.find(n);
  if (it == state_->bases.end()) it = state_->bases.emplace(n, FiberBasis(state_->rees, n)).first;
  return it->second;
}

GradedPiece ModuleEmbedding::ambient(unsigned n) const {
  return {n, Submodule::ambient(state_->base, fiber_basis(n).size())};
}

GradedPiece ModuleEmbedding::degree_one(const Submodule& n) const {
  require_same_ring(n.ring(), state_->base);
  if (n.rank() != state_->rank) throw ContextMismatch("submodule rank differs from the embedding rank");
  return {1, n};
}

const GradedPiece& ModuleEmbedding::power(unsigned n, const Deadline& deadline) const {
  {
    std::lock_guard lock(state_->mu);
    auto it = state_->powers.find(n);
    if (it != state_->powers.end()) return it->second;
  }
  GradedPiece value;
  if (n == 0) {
    value = ambient(0);
  } else if (n == 1) {
    value = {1, tidy(state_->module, deadline)};
  } else {
    const GradedPiece& prev = power(n - 1, deadline);
    const GradedPiece& one = power(1, deadline);
    value = piece_product(*this, prev, one, deadline);
  }
  std::lock_guard lock(state_->mu);
  return state_->powers.emplace(n, std::move(value)).first->second;
}

Polynomial ModuleEmbedding::linear_form(const PolyVector& v) const {
  if (v.size() != state_->rank) throw ContextMismatch("column length differs from the rank");
  Polynomial out(state_->rees);
  const auto& b1 = fiber_basis(1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    out += v[i].transfer(state_->rees).times(b1[i], Scalar::one(state_->base->field()));
  }
  return out;
}

PolyVector ModuleEmbedding::to_graded(const Polynomial& f, unsigned n) const {
  const auto& basis = fiber_basis(n);
  const Ring& s = state_->rees;
  const Ring& a = state_->base;
  std::vector<std::vector<Term>> parts(basis.size());
  const std::size_t d = s->num_base();
  std::vector<Exponent> eb(a->num_vars(), 0), ef(s->num_vars(), 0);
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < s->num_vars(); ++i) {
      if (i < d) {
        eb[i] = t.mono[i];
        ef[i] = 0;
      } else {
        ef[i] = t.mono[i];
      }
    }
    Monomial fiber(s->layout(), ef);
    if (fiber.fiber_degree() != n || fiber.total_degree() != n)
      throw PreconditionError("element is not homogeneous of fiber degree " + std::to_string(n));
    auto k = basis.index_of(fiber);
    parts[*k].push_back({Monomial(a->layout(), eb), t.coeff});
  }
  PolyVector out;
  out.reserve(parts.size());
  for (auto& p : parts) out.push_back(Polynomial::from_terms(a, std::move(p)));
  return out;
}

Polynomial ModuleEmbedding::from_graded(const PolyVector& v, unsigned n) const {
  const auto& basis = fiber_basis(n);
  if (v.size() != basis.size()) throw ContextMismatch("vector length differs from the graded rank");
  Polynomial out(state_->rees);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero())
      out += v[k].transfer(state_->rees).times(basis[k], Scalar::one(state_->base->field()));
  return out;
}

// ---------------------------------------------------------------------------
// Graded products

std::vector<PolyVector> multiply_vectors(const ModuleEmbedding& e, const std::vector<PolyVector>& u,
                                         unsigned a, const PolyVector& p, unsigned b) {
  const auto& ba = e.fiber_basis(a);
  const auto& bb = e.fiber_basis(b);
  const auto& bc = e.fiber_basis(a + b);
  // Index table for basis products.
  std::vector<std::size_t> table(ba.size() * bb.size());
  for (std::size_t k = 0; k < ba.size(); ++k)
    for (std::size_t l = 0; l < bb.size(); ++l) table[k * bb.size() + l] = *bc.index_of(ba[k] * bb[l]);
  std::vector<PolyVector> out;
  out.reserve(u.size());
  for (const auto& w : u) {
    PolyVector r(bc.size(), Polynomial(e.base_ring()));
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k].is_zero()) continue;
      for (std::size_t l = 0; l < p.size(); ++l)
        if (!p[l].is_zero()) r[table[k * bb.size() + l]] += w[k] * p[l];
    }
    out.push_back(std::move(r));
  }
  return out;
}

GradedPiece piece_product(const ModuleEmbedding& e, const GradedPiece& u, const GradedPiece& v,
                          const Deadline& deadline) {
  const unsigned deg = u.degree + v.degree;
  std::vector<PolyVector> gens;
  for (const auto& p : v.module.generators()) {
    if (is_zero_vector(p)) continue;
    deadline.check();
    auto part = multiply_vectors(e, u.module.generators(), u.degree, p, v.degree);
    for (auto& g : part)
      if (!is_zero_vector(g)) gens.push_back(std::move(g));
  }
  Submodule out(e.base_ring(), e.fiber_basis(deg).size(), std::move(gens));
  return {deg, tidy(out, deadline)};
}

GradedPiece graded_piece(const ModuleEmbedding& e, unsigned k, unsigned n) {
  if (k == 0) return e.ambient(n);
  if (n < k) return {n, Submodule::zero(e.base_ring(), e.fiber_basis(n).size())};
  if (n == k) return e.power(k);
  return piece_product(e, e.ambient(n - k), e.power(k));
}

GradedPiece graded_component(const ModuleEmbedding& e, const Submodule& ideal_in_s, unsigned n) {
  require_same_ring(ideal_in_s.ring(), e.rees_ring());
  if (!ideal_in_s.is_ideal()) throw PreconditionError("graded_component expects an ideal of S");
  std::vector<PolyVector> gens;
  for (const auto& g : ideal_in_s.generators()) {
    const Polynomial& f = g[0];
    if (f.is_zero()) continue;
    if (!f.is_fiber_homogeneous()) throw PreconditionError("ideal is not homogeneous in the fiber grading");
    const unsigned deg = f.fiber_degree();
    if (deg > n) continue;
    for (const auto& m : e.fiber_basis(n - deg).monomials())
      gens.push_back(e.to_graded(f.times(m, Scalar::one(e.base_ring()->field())), n));
  }
  Submodule out(e.base_ring(), e.fiber_basis(n).size(), std::move(gens));
  return {n, tidy(out, {})};
}

// ---------------------------------------------------------------------------
// Numerical invariants

std::size_t min_gens(const Submodule& u, const Deadline& deadline) {
  const Ring& ring = u.ring();
  ModuleOrder order = ModuleOrder::term_over_position(*ring);
  GroebnerEngine engine(ring, u.rank(), order, deadline);
  for (std::size_t i = 0; i < ring->num_base(); ++i) {
    Polynomial x = Polynomial::variable(ring, i);
    for (const auto& g : u.generators()) {
      PolyVector v;
      for (const auto& p : g) v.push_back(x * p);
      engine.add(to_sparse(v, order));
    }
  }
  engine.complete();
  std::size_t count = 0;
  for (const auto& g : u.generators()) {
    if (engine.add(to_sparse(g, order))) {
      ++count;
      engine.complete();
    }
  }
  return count;
}

std::size_t min_gens(const ModuleEmbedding& e) { return min_gens(e.module()); }

ParameterReport is_parameter_module(const ModuleEmbedding& e) {
  ParameterReport rep;
  rep.colength = e.colength();
  rep.finite_colength = rep.colength.has_value();
  Submodule mf = ideal_times(Submodule::maximal_ideal_power(e.base_ring(), 1),
                             Submodule::ambient(e.base_ring(), e.rank()));
  rep.inside_mf = contains(mf, e.module());
  rep.mu = min_gens(e);
  rep.expected_mu = e.base_ring()->num_base() + e.rank() - 1;
  rep.value = rep.finite_colength && rep.inside_mf && rep.mu == rep.expected_mu;
  return rep;
}

namespace {

Polynomial determinant(const std::vector<std::vector<const Polynomial*>>& m, const Ring& ring) {
  const std::size_t k = m.size();
  if (k == 1) return *m[0][0];
  if (k == 2) return *m[0][0] * *m[1][1] - *m[0][1] * *m[1][0];
  Polynomial out(ring);
  for (std::size_t j = 0; j < k; ++j) {
    if (m[0][j]->is_zero()) continue;
    std::vector<std::vector<const Polynomial*>> minor;
    for (std::size_t i = 1; i < k; ++i) {
      std::vector<const Polynomial*> row;
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    Polynomial term = *m[0][j] * determinant(minor, ring);
    if (j % 2) out -= term;
    else out += term;
  }
  return out;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

Submodule fitting_ideal(const ModuleEmbedding& e, std::size_t i) {
  const std::size_t r = e.rank();
  if (i >= r) throw PreconditionError("Fitting index must be smaller than the rank");
  const std::size_t k = r - i;
  const auto& cols = e.columns();
  std::vector<Polynomial> minors;
  if (cols.size() >= k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(r, k, rs);
    subsets(cols.size(), k, cs);
    for (const auto& rows : rs)
      for (const auto& cc : cs) {
        std::vector<std::vector<const Polynomial*>> m(k, std::vector<const Polynomial*>(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) m[a][b] = &cols[cc[b]][rows[a]];
        Polynomial det = determinant(m, e.base_ring());
        if (!det.is_zero()) minors.push_back(std::move(det));
      }
  }
  Submodule out = Submodule::ideal(e.base_ring(), std::move(minors));
  return out.is_monomial() ? minimalize_monomial(out) : out;
}

unsigned ord(const Submodule& ideal) {
  if (!ideal.is_ideal()) throw PreconditionError("ord expects an ideal");
  std::optional<unsigned> best;
  for (const auto& g : ideal.generators()) {
    if (g[0].is_zero()) continue;
    unsigned d = g[0].min_base_degree();
    best = best ? std::min(*best, d) : d;
  }
  if (!best) throw PreconditionError("ord of the zero ideal");
  return *best;
}

std::size_t fiber_cone_hilbert(const ModuleEmbedding& e, unsigned n) {
  if (n == 0) return 1;
  return min_gens(e.power(n).module);
}

// ---------------------------------------------------------------------------
// Grading detection

namespace {

using Degree = std::vector<long>;

// Degree of a homogeneous polynomial under `weights`.
std::optional<Degree> entry_degree(const Polynomial& p, const std::vector<unsigned>& weights) {
  const std::size_t d = p.ring()->num_base();
  std::optional<Degree> deg;
  for (const auto& t : p.terms()) {
    long s = 0;
    for (std::size_t i = 0; i < d; ++i) s += static_cast<long>(weights[i]) * t.mono[i];
    Degree here{s};
    if (deg && *deg != here) return std::nullopt;
    deg = here;
  }
  return deg;
}

// Finds row shifts s_i and column degrees c_j with deg(entry_ij) = c_j - s_i.
std::optional<std::vector<Degree>> solve_shifts(const ModuleEmbedding& e, const std::vector<unsigned>& weights) {
  const std::size_t r = e.rank(), m = e.columns().size();
  const std::size_t dim = 1;
  std::vector<std::optional<Degree>> row(r), col(m);
  std::vector<std::vector<std::optional<Degree>>> deg(r, std::vector<std::optional<Degree>>(m));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto& p = e.columns()[j][i];
      if (p.is_zero()) continue;
      deg[i][j] = entry_degree(p, weights);
      if (!deg[i][j]) return std::nullopt;
    }
  auto sub = [](const Degree& a, const Degree& b) {
    Degree out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
    return out;
  };
  auto add = [](const Degree& a, const Degree& b) {
    Degree out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
  };
  for (std::size_t start = 0; start < r; ++start) {
    if (row[start]) continue;
    row[start] = Degree(dim, 0);
    std::vector<std::pair<bool, std::size_t>> stack{{true, start}};
    while (!stack.empty()) {
      auto [is_row, idx] = stack.back();
      stack.pop_back();
      if (is_row) {
        for (std::size_t j = 0; j < m; ++j) {
          if (!deg[idx][j]) continue;
          Degree c = add(*deg[idx][j], *row[idx]);
          if (!col[j]) {
            col[j] = c;
            stack.push_back({false, j});
          } else if (*col[j] != c) {
            return std::nullopt;
          }
        }
      } else {
        for (std::size_t i = 0; i < r; ++i) {
          if (!deg[i][idx]) continue;
          Degree s = sub(*col[idx], *deg[i][idx]);
          if (!row[i]) {
            row[i] = s;
            stack.push_back({true, i});
          } else if (*row[i] != s) {
            return std::nullopt;
          }
        }
      }
    }
  }
  std::vector<Degree> out;
  for (auto& s : row) out.push_back(*s);
  return out;
}

}  // namespace

GradingInfo detect_grading(const ModuleEmbedding& e) {
  GradingInfo info;
  const std::size_t d = e.base_ring()->num_base();
  std::vector<std::vector<unsigned>> candidates;
  candidates.push_back(std::vector<unsigned>(d, 1));
  if (d == 2)
    for (unsigned total = 3; total <= 24; ++total)
      for (unsigned a = 1; a < total; ++a)
        if (std::gcd(a, total - a) == 1) candidates.push_back({a, total - a});
  for (const auto& w : candidates) {
    if (auto shifts = solve_shifts(e, w)) {
      info.graded = true;
      info.kind = (w == candidates.front()) ? "standard" : "weighted";
      info.weights = w;
      for (const auto& s : *shifts) info.row_shifts.push_back(s[0]);
      return info;
    }
  }
  return info;
}

}  // namespace reescalc
