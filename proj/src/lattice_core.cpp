#include "k3lat/lattice_core.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace k3lat {

Lattice::Lattice(std::string n, IntMatrix g) : name(std::move(n)), gram(std::move(g)) {
  if (gram.rows() != gram.cols()) throw InputError("gram matrix is not square");
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = i + 1; j < gram.cols(); ++j)
      if (gram(i, j) != gram(j, i))
        throw InputError("gram matrix is not symmetric: entry (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ") = " + gram(i, j).get_str() + " but (" +
                         std::to_string(j + 1) + "," + std::to_string(i + 1) + ") = " +
                         gram(j, i).get_str());
}

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (mpz_odd_p(gram(i, i).get_mpz_t())) return false;
  return true;
}

IntVec Sublattice::functional(const IntVec& y) const { return basis * (ambient->gram * y); }

Sublattice make_sublattice(const LatticePtr& ambient, const std::vector<IntVec>& vectors) {
  const std::size_t n = ambient->rank();
  Sublattice s;
  s.ambient = ambient;
  if (vectors.empty()) {
    s.basis = IntMatrix(0, n);
    s.gram = IntMatrix(0, 0);
    s.primitive = true;
    return s;
  }
  IntMatrix raw = IntMatrix::from_rows(vectors, n);
  s.basis = hermite_normal_form(raw);
  if (s.basis.rows() != vectors.size()) throw InputError("sublattice basis is dependent");
  s.gram = s.basis * ambient->gram * s.basis.transpose();
  s.primitive = IntMatrix::from_rows(saturate(s.basis.row_list(), n), n) == s.basis;
  return s;
}

Sublattice whole_lattice(const LatticePtr& ambient) {
  return make_sublattice(ambient, IntMatrix::identity(ambient->rank()).row_list());
}

Lattice rescale(const Lattice& l, const Rat& a) {
  if (a == 0) throw InputError("rescale by zero");
  IntMatrix g(l.rank(), l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) {
      Rat v = a * l.gram(i, j);
      if (v.get_den() != 1) throw InputError("rescaled gram matrix is not integral");
      g(i, j) = v.get_num();
    }
  return Lattice(l.name, g);
}

Lattice direct_sum(const std::vector<Lattice>& ls) {
  std::size_t n = 0;
  for (const auto& l : ls) n += l.rank();
  IntMatrix g(n, n);
  std::size_t off = 0;
  for (const auto& l : ls) {
    for (std::size_t i = 0; i < l.rank(); ++i)
      for (std::size_t j = 0; j < l.rank(); ++j) g(off + i, off + j) = l.gram(i, j);
    off += l.rank();
  }
  return Lattice("", g);
}

FiniteQuadraticModule discriminant_form(const Lattice& l) {
  if (!l.is_nondegenerate()) throw InputError("discriminant form of a degenerate lattice");
  const std::size_t n = l.rank();
  Smith s = smith_normal_form(l.gram);
  FiniteQuadraticModule m;
  m.gram = l.gram;
  m.even = l.is_even();
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const Int& d = s.d(i, i);
    if (d == 1) continue;
    RatVec g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = Rat(s.v(j, i), d);
    m.gens.push_back(reduce_mod1(g));
    m.orders.push_back(d);
    rows.push_back(s.u.row(i));
  }
  m.coord_map = rows.empty() ? IntMatrix(0, n) : IntMatrix::from_rows(rows, n);
  for (std::size_t i = 0; i < m.gens.size(); ++i) {
    if (mpz_odd_p(m.orders[i].get_mpz_t())) continue;
    RatVec h(n);
    for (std::size_t j = 0; j < n; ++j) h[j] = m.gens[i][j] * Rat(m.orders[i] / 2);
    m.layer.push_back(reduce_mod1(h));
    m.layer_source.push_back(i);
  }
  return m;
}

Sublattice orthogonal_complement(const Sublattice& s) {
  if (!s.ambient->is_nondegenerate()) throw InputError("complement in a degenerate lattice");
  if (s.rank() == 0) return whole_lattice(s.ambient);
  IntMatrix pairing = s.basis * s.ambient->gram;
  return make_sublattice(s.ambient, kernel_basis_int(pairing));
}

Sublattice primitive_span(const LatticePtr& ambient, const std::vector<Sublattice>& parts) {
  std::vector<IntVec> vs;
  for (const auto& p : parts)
    for (const auto& r : p.basis.row_list()) vs.push_back(r);
  return make_sublattice(ambient, saturate(vs, ambient->rank()));
}

Int subgroup_order(const std::vector<IntVec>& gens, const IntVec& moduli) {
  const std::size_t n = moduli.size();
  if (n == 0) return 1;
  std::vector<IntVec> rows = gens;
  Int total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n);
    e[i] = moduli[i];
    rows.push_back(e);
    total *= moduli[i];
  }
  Smith s = smith_normal_form(IntMatrix::from_rows(rows, n));
  Int index = 1;
  for (std::size_t i = 0; i < n; ++i) index *= s.d(i, i);
  return total / index;
}

IntVec GlueGroup::element_of(const IntVec& y) const {
  IntVec x;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    IntVec c = modules[i]->coords_of_functional(summands[i].functional(y));
    x.insert(x.end(), c.begin(), c.end());
  }
  return x;
}

IntVec GlueGroup::component(const IntVec& x, std::size_t i) const {
  const std::size_t len = modules[i]->orders.size();
  return IntVec(x.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
                x.begin() + static_cast<std::ptrdiff_t>(offsets[i] + len));
}

IntVec GlueGroup::add(const IntVec& x, const IntVec& y) const {
  IntVec z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    z[k] = x[k] + y[k];
    mpz_fdiv_r(z[k].get_mpz_t(), z[k].get_mpz_t(), moduli[k].get_mpz_t());
  }
  return z;
}

Rat GlueGroup::b_component(std::size_t i, const IntVec& x, const IntVec& y) const {
  return modules[i]->b(modules[i]->rep(component(x, i)), modules[i]->rep(component(y, i)));
}

Rat GlueGroup::q_component(std::size_t i, const IntVec& x) const {
  return modules[i]->q(modules[i]->rep(component(x, i)));
}

std::vector<IntVec> GlueGroup::elements() const {
  if (order > 1 << 16) throw InputError("glue group too large to enumerate");
  std::set<IntVec> seen{IntVec(moduli.size())};
  std::vector<IntVec> frontier{IntVec(moduli.size())};
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const auto& x : frontier)
      for (const auto& g : generators) {
        IntVec y = add(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

Int GlueGroup::projection_order(const std::vector<std::size_t>& which) const {
  std::vector<IntVec> gens;
  IntVec mods;
  for (std::size_t i : which) {
    IntVec m = modules[i]->orders;
    mods.insert(mods.end(), m.begin(), m.end());
  }
  for (const auto& g : generators) {
    IntVec p;
    for (std::size_t i : which) {
      IntVec c = component(g, i);
      p.insert(p.end(), c.begin(), c.end());
    }
    gens.push_back(p);
  }
  return subgroup_order(gens, mods);
}

GlueGroup glue_group(const LatticePtr& ambient, const std::vector<Sublattice>& summands) {
  if (!ambient->is_nondegenerate()) throw InputError("glue group of a degenerate lattice");
  std::size_t total_rank = 0;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (!summands[i].primitive) throw InputError("glue summand is not primitive");
    total_rank += summands[i].rank();
    for (std::size_t j = i + 1; j < summands.size(); ++j)
      if (!(summands[i].basis * ambient->gram * summands[j].basis.transpose()).is_zero())
        throw InputError("glue summands are not orthogonal");
  }
  if (total_rank != ambient->rank()) throw InputError("glue summands do not have full rank");

  GlueGroup g;
  g.ambient = ambient;
  g.summands = summands;
  for (const auto& s : summands) {
    g.offsets.push_back(g.moduli.size());
    auto m = std::make_shared<const FiniteQuadraticModule>(discriminant_form(s.as_lattice()));
    g.moduli.insert(g.moduli.end(), m->orders.begin(), m->orders.end());
    g.modules.push_back(m);
  }
  const std::size_t n = ambient->rank();
  for (std::size_t j = 0; j < n; ++j) {
    IntVec e(n);
    e[j] = 1;
    g.generators.push_back(g.element_of(e));
  }
  g.order = subgroup_order(g.generators, g.moduli);

  // Postconditions: index formula, trivial meeting with each factor, isotropy.
  Int prod = 1;
  for (const auto& m : g.modules) prod *= m->order();
  if (g.order * g.order * abs(ambient->det()) != prod)
    throw InconsistencyError("glue group order does not match the index formula");
  for (std::size_t i = 0; i < summands.size(); ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < summands.size(); ++j)
      if (j != i) others.push_back(j);
    if (g.projection_order(others) != g.order)
      throw InconsistencyError("glue group meets a summand's discriminant group");
  }
  {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        Rat s = 0;
        for (std::size_t i = 0; i < summands.size(); ++i)
          s += g.b_component(i, g.generators[a], g.generators[b]);
        if (reduce_mod(s, 1) != 0) throw InconsistencyError("glue group is not isotropic");
      }
    if (ambient->is_even())
      for (const auto& x : g.generators) {
        Rat s = 0;
        for (std::size_t i = 0; i < summands.size(); ++i) s += g.q_component(i, x);
        if (reduce_mod(s, 2) != 0) throw InconsistencyError("glue group is not q-isotropic");
      }
  }
  return g;
}

GlueGroup glue_group(const LatticePtr& ambient, const Sublattice& s1, const Sublattice& s2) {
  return glue_group(ambient, std::vector<Sublattice>{s1, s2});
}

}  // namespace k3lat
