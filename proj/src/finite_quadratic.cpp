#include "k3lat/finite_quadratic.hpp"

#include <algorithm>

namespace k3lat {

Rat reduce_mod(const Rat& x, long m) {
  Rat q = x / m;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rat r = x - Rat(fl * m);
  r.canonicalize();
  return r;
}

RatVec reduce_mod1(const RatVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = reduce_mod(v[i], 1);
  return out;
}

Int FiniteQuadraticModule::order() const {
  Int o = 1;
  for (const auto& d : orders) o *= d;
  return o;
}

bool FiniteQuadraticModule::is_two_elementary() const {
  return std::all_of(orders.begin(), orders.end(), [](const Int& d) { return d == 2; });
}

Rat FiniteQuadraticModule::b(const RatVec& x, const RatVec& y) const {
  return reduce_mod(bilinear(gram, x, y), 1);
}

Rat FiniteQuadraticModule::q(const RatVec& x) const {
  if (!even) throw InputError("quadratic form requested on an odd lattice");
  return reduce_mod(bilinear(gram, x, x), 2);
}

IntVec FiniteQuadraticModule::coords_of_functional(const IntVec& z) const {
  IntVec c = coord_map * z;
  for (std::size_t i = 0; i < c.size(); ++i)
    mpz_fdiv_r(c[i].get_mpz_t(), c[i].get_mpz_t(), orders[i].get_mpz_t());
  return c;
}

std::optional<F2Vec> FiniteQuadraticModule::layer_coords_of_functional(const IntVec& z) const {
  IntVec c = coords_of_functional(z);
  F2Vec x(layer.size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    auto it = std::find(layer_source.begin(), layer_source.end(), i);
    if (it == layer_source.end() || 2 * c[i] != orders[i]) return std::nullopt;
    x[static_cast<std::size_t>(it - layer_source.begin())] = 1;
  }
  return x;
}

RatVec FiniteQuadraticModule::rep(const IntVec& coords) const {
  RatVec v(rank());
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += coords[i] * gens[i][j];
  return reduce_mod1(v);
}

RatVec FiniteQuadraticModule::layer_rep(const F2Vec& x) const {
  RatVec v(rank());
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k])
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += layer[k][j];
  return reduce_mod1(v);
}

Rat FiniteQuadraticModule::b_layer(const F2Vec& x, const F2Vec& y) const {
  return b(layer_rep(x), layer_rep(y));
}

Rat FiniteQuadraticModule::q_layer(const F2Vec& x) const { return q(layer_rep(x)); }

std::vector<F2Vec> FiniteQuadraticModule::layer_pairing() const {
  const std::size_t a = layer_dim();
  std::vector<F2Vec> m(a, F2Vec(a, 0));
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j) {
      Rat v = b(layer[i], layer[j]);
      if (v != 0 && v != Rat(1, 2)) throw InconsistencyError("layer pairing outside (1/2)Z/Z");
      m[i][j] = v == 0 ? 0 : 1;
    }
  return m;
}

SubgroupF2::SubgroupF2(ModulePtr parent, std::vector<F2Vec> gens)
    : parent_(std::move(parent)) {
  const std::size_t n = parent_->layer_dim();
  for (const auto& g : gens)
    if (g.size() != n) throw InputError("subgroup generator has wrong length");
  basis_ = f2::echelon(std::move(gens), n);
}

bool SubgroupF2::contains(const F2Vec& x) const {
  return f2::in_span(basis_, x, parent_->layer_dim());
}

bool SubgroupF2::contains(const SubgroupF2& h) const {
  return std::all_of(h.basis().begin(), h.basis().end(),
                     [&](const F2Vec& x) { return contains(x); });
}

std::vector<F2Vec> SubgroupF2::elements() const {
  if (dim() > 20) throw InputError("subgroup too large to enumerate");
  std::vector<F2Vec> out;
  const std::size_t n = parent_->layer_dim();
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim()); ++mask) {
    F2Vec x(n, 0);
    for (std::size_t k = 0; k < dim(); ++k)
      if (mask >> k & 1) x = f2::add(x, basis_[k]);
    out.push_back(x);
  }
  return out;
}

bool SubgroupF2::operator==(const SubgroupF2& o) const {
  return parent_ == o.parent_ && basis_ == o.basis_;
}

SubgroupF2 ann2(const ModulePtr& a) {
  std::vector<F2Vec> gens;
  for (std::size_t i = 0; i < a->layer_dim(); ++i) {
    F2Vec e(a->layer_dim(), 0);
    e[i] = 1;
    gens.push_back(e);
  }
  return SubgroupF2(a, gens);
}

SubgroupF2 zero_subgroup(const ModulePtr& a) { return SubgroupF2(a, {}); }

SubgroupF2 layer_radical(const ModulePtr& a) {
  return SubgroupF2(a, f2::kernel(a->layer_pairing(), a->layer_dim()));
}

SubgroupF2 doubles_in_layer(const ModulePtr& a) {
  std::vector<F2Vec> gens;
  for (std::size_t k = 0; k < a->layer_dim(); ++k)
    if (a->orders[a->layer_source[k]] % 4 == 0) {
      F2Vec e(a->layer_dim(), 0);
      e[k] = 1;
      gens.push_back(e);
    }
  return SubgroupF2(a, gens);
}

namespace {

void require_nondegenerate(const ModulePtr& a) {
  if (layer_radical(a).dim() != 0) throw InputError("degenerate form on the 2-torsion layer");
}

F2Vec pair_row(const std::vector<F2Vec>& pairing, const F2Vec& h) {
  const std::size_t n = pairing.size();
  F2Vec row(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) row[j] ^= static_cast<std::uint8_t>(h[i] & pairing[i][j]);
  return row;
}

}  // namespace

SubgroupF2 orthogonal_complement_in(const SubgroupF2& h) {
  const ModulePtr& a = h.parent();
  require_nondegenerate(a);
  auto pairing = a->layer_pairing();
  std::vector<F2Vec> rows;
  for (const auto& g : h.basis()) rows.push_back(pair_row(pairing, g));
  return SubgroupF2(a, f2::kernel(rows, a->layer_dim()));
}

bool is_isotropic(const SubgroupF2& h, IsotropyMode mode) {
  const ModulePtr& a = h.parent();
  if (mode == IsotropyMode::Quadratic) {
    if (!a->even) throw InputError("quadratic isotropy needs an even source lattice");
    // q vanishing on generators and b vanishing between them covers the span.
    for (const auto& x : h.basis())
      if (a->q_layer(x) != 0) return false;
  }
  for (const auto& x : h.basis())
    for (const auto& y : h.basis())
      if (a->b_layer(x, y) != 0) return false;
  return true;
}

F2Vec characteristic_element(const ModulePtr& a) {
  require_nondegenerate(a);
  auto pairing = a->layer_pairing();
  const std::size_t n = a->layer_dim();
  IntMatrix m(n, n);
  IntVec rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = pairing[i][j];
    rhs[i] = pairing[i][i];
  }
  auto v = solve_mod2(m, rhs);
  if (!v) throw InconsistencyError("nondegenerate layer without a characteristic element");
  return *v;
}

bool is_characteristic(const ModulePtr& a, const F2Vec& v) {
  const std::size_t n = a->layer_dim();
  for (std::size_t i = 0; i < n; ++i) {
    F2Vec e(n, 0);
    e[i] = 1;
    if (a->b_layer(e, e) != a->b_layer(e, v)) return false;
  }
  return true;
}

namespace {

void require_same_parent(const SubgroupF2& h1, const SubgroupF2& h2) {
  if (h1.parent() != h2.parent()) throw InputError("subgroups of different modules");
}

}  // namespace

SubgroupF2 subgroup_sum(const SubgroupF2& h1, const SubgroupF2& h2) {
  require_same_parent(h1, h2);
  std::vector<F2Vec> gens = h1.basis();
  gens.insert(gens.end(), h2.basis().begin(), h2.basis().end());
  return SubgroupF2(h1.parent(), gens);
}

SubgroupF2 subgroup_intersection(const SubgroupF2& h1, const SubgroupF2& h2) {
  require_same_parent(h1, h2);
  return SubgroupF2(h1.parent(),
                    f2::intersection(h1.basis(), h2.basis(), h1.parent()->layer_dim()));
}

}  // namespace k3lat
