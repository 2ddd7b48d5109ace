#include "support.hpp"

#include <set>

namespace k3test {

const CatalogSet& catalog_set() {
  static const CatalogSet set = [] {
    CatalogSet s;
    const IsometryInvolution tau = catalog::tau_reference();
    auto add = [&](const std::string& name, const IsometryInvolution& sigma) {
      s.triples.push_back(validate_triple(catalog::k3_ptr(), tau, sigma));
      s.analyses.push_back(analyze(s.triples.back()));
      s.named.push_back({name, &s.triples.back(), &s.analyses.back()});
    };
    add("reference", catalog::sigma_reference());
    for (const auto& m : catalog::block_sigma_family(catalog::default_family_specs()))
      if (m.hyperbolic) add(m.sigma.name, m.sigma);
    return s;
  }();
  return set;
}

namespace {

Sublattice span(const LatticePtr& l, const std::vector<IntVec>& v) {
  return primitive_span(l, {make_sublattice(l, v)});
}

Decomposition with_complement(std::string name, const LatticePtr& l, const Sublattice& s1,
                              const Sublattice& s2) {
  std::vector<IntVec> both = s1.basis.row_list();
  for (const auto& r : s2.basis.row_list()) both.push_back(r);
  return {std::move(name), l, s1, s2, orthogonal_complement(make_sublattice(l, both))};
}

}  // namespace

std::vector<Decomposition> three_summand_decompositions() {
  std::vector<Decomposition> out;

  // U + U: <e1+f1>, <e2+f2> and their complement.
  {
    auto l = std::make_shared<const Lattice>(
        direct_sum({catalog::hyperbolic_plane(), catalog::hyperbolic_plane()}));
    out.push_back(with_complement("UU diagonals", l, span(l, {{1, 1, 0, 0}}), span(l, {{0, 0, 1, 1}})));
    out.push_back(with_complement("UU diagonal and plane", l, span(l, {{1, 1, 0, 0}}),
                                  span(l, {{0, 0, 1, 0}, {0, 0, 0, 1}})));
  }

  // E8: disjoint sets of mutually orthogonal roots.
  {
    auto l = std::make_shared<const Lattice>(catalog::e8());
    const auto& roots = catalog::e8_roots();
    std::vector<IntVec> frame{roots.front()};
    for (const auto& r : roots)
      if (frame.size() < 8 &&
          std::all_of(frame.begin(), frame.end(), [&](const IntVec& f) { return l->pair(r, f) == 0; }))
        frame.push_back(r);
    const std::pair<std::size_t, std::size_t> splits[] = {{1, 1}, {1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 4}};
    for (auto [k1, k2] : splits) {
      std::vector<IntVec> a(frame.begin(), frame.begin() + static_cast<long>(k1));
      std::vector<IntVec> b(frame.begin() + static_cast<long>(k1),
                            frame.begin() + static_cast<long>(k1 + k2));
      out.push_back(with_complement("E8 roots " + std::to_string(k1) + "+" + std::to_string(k2), l,
                                    span(l, a), span(l, b)));
    }
  }

  // K3: the two tau-fixed pieces and L_tau for catalog triples with small a(theta).
  {
    const auto& set = catalog_set();
    int taken = 0;
    std::set<std::size_t> seen;
    for (const auto& na : set.named) {
      const std::size_t at = na.analysis->theta.a;
      if (at > 2 || !seen.insert(at).second) continue;
      const auto& t = *na.triple;
      out.push_back({"K3 pieces " + na.name, t.lattice, t.fix_both, t.fix_tau_anti_sigma, t.tau_minus});
      if (++taken == 3) break;
    }
  }
  return out;
}

ComplementResult complement_identity(const Decomposition& d) {
  const GlueGroup g = glue_group(d.lattice, {d.s1, d.s2, d.s3});
  const auto all = g.elements();
  auto zero_on = [&](const IntVec& x, std::size_t i) {
    for (auto v : g.component(x, i))
      if (v != 0) return false;
    return true;
  };
  std::vector<IntVec> g12, g23, g13;
  for (const auto& x : all) {
    if (zero_on(x, 2)) g12.push_back(x);
    if (zero_on(x, 0)) g23.push_back(x);
    if (zero_on(x, 1)) g13.push_back(x);
  }
  std::set<IntVec> complement;
  for (const auto& x : all) {
    bool orth = true;
    for (const auto& y : g12)
      if (g.b_component(1, x, y) != 0) {
        orth = false;
        break;
      }
    if (orth) complement.insert(x);
  }
  std::set<IntVec> sum;
  for (const auto& x : g23)
    for (const auto& y : g13) sum.insert(g.add(x, y));

  ComplementResult r;
  r.glue_order = all.size();
  r.gamma12 = g12.size();
  r.gamma23 = g23.size();
  r.gamma13 = g13.size();
  r.complement = complement.size();
  r.sum = sum.size();
  r.sets_equal = complement == sum;
  r.counting = g.modules[1]->order() == Int(static_cast<unsigned long>(g12.size() * g23.size()));
  return r;
}

namespace {

// Fractional reduction of a rational vector into [0,1)^n.
RatVec frac(RatVec v) {
  for (auto& x : v) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    x -= fl;
  }
  return v;
}

Rat mod_rat(const Rat& x, long m) {
  Rat y = x / m;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return x - Rat(fl) * m;
}

}  // namespace

DualCosets dual_coset_oracle(const Lattice& l) {
  const std::size_t n = l.rank();
  // Dual basis vectors are the columns of G^{-1}, written in lattice coordinates.
  RatMatrix ginv = inverse(l.gram);
  std::vector<RatVec> gens;
  for (std::size_t j = 0; j < n; ++j) {
    RatVec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = ginv(i, j);
    gens.push_back(frac(c));
  }
  auto pair = [&](const RatVec& x, const RatVec& y) {
    Rat s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += x[i] * Rat(l.gram(i, j)) * y[j];
    return s;
  };
  std::set<RatVec> seen{RatVec(n)};
  std::vector<RatVec> frontier{RatVec(n)};
  while (!frontier.empty()) {
    std::vector<RatVec> next;
    for (const auto& x : frontier)
      for (const auto& gv : gens) {
        RatVec y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + gv[i];
        y = frac(y);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  DualCosets d;
  d.order = seen.size();
  for (const auto& x : seen) {
    Int ord = 1;
    for (const auto& c : x) ord = lcm(ord, c.get_den());
    ++d.order_histogram[ord];
    const Rat self = pair(x, x);
    ++d.b_self[mod_rat(self, 1)];
    if (l.is_even()) ++d.q_values[mod_rat(self, 2)];
  }
  return d;
}

DualCosets module_statistics(const FiniteQuadraticModule& a) {
  DualCosets d;
  std::vector<Int> idx(a.orders.size(), 0);
  while (true) {
    IntVec coords(idx.begin(), idx.end());
    const RatVec x = a.rep(coords);
    Int ord = 1;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      Int g = gcd(idx[i], a.orders[i]);
      ord = lcm(ord, a.orders[i] / g);
    }
    ++d.order;
    ++d.order_histogram[ord];
    ++d.b_self[a.b(x, x)];
    if (a.even) ++d.q_values[a.q(x)];
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == a.orders[k]) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return d;
}

IntMatrix random_symmetric(std::mt19937& rng, std::size_t n, long lo, long hi, bool even) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      long v = dist(rng);
      if (i == j && even) v = 2 * (v / 2);
      m(i, j) = m(j, i) = v;
    }
  return m;
}

}  // namespace k3test
