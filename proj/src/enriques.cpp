#include "k3lat/enriques.hpp"

#include <algorithm>
#include <set>

namespace k3lat {

namespace {

Sublattice joint_eigenlattice(const EnriquesActionTriple& t, int tau_sign, int sigma_sign) {
  const std::size_t n = t.lattice->rank();
  const IntMatrix id = IntMatrix::identity(n);
  IntMatrix a = t.tau.matrix - (tau_sign > 0 ? id : -id);
  IntMatrix b = t.sigma.matrix - (sigma_sign > 0 ? id : -id);
  return make_sublattice(t.lattice, kernel_basis_int(IntMatrix::stack(a, b)));
}

// Matrix of m restricted to the m-stable sublattice s, in the basis of s.
IntMatrix restrict_action(const Sublattice& s, const IntMatrix& m) {
  const std::size_t k = s.rank();
  const IntMatrix bt = s.basis.transpose();
  IntMatrix out(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    auto col = solve_int(bt, m * s.basis.row(j));
    if (!col) throw InconsistencyError("sublattice is not stable under the involution");
    for (std::size_t i = 0; i < k; ++i) out(i, j) = (*col)[i];
  }
  return out;
}

std::vector<F2Vec> rows_mod2(const IntMatrix& m) {
  std::vector<F2Vec> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(f2::reduce(m.row(i)));
  return out;
}

// dim of the kernel of (m - 1) over Z/2, for m acting on columns.
long fixed_dim_mod2(const IntMatrix& m) {
  const std::size_t n = m.rows();
  return static_cast<long>(n - f2::rank(rows_mod2(m - IntMatrix::identity(n)), n));
}

// Coordinates mod 2 of a vector of L in the basis of a primitive sublattice.
F2Vec coords_mod2(const Sublattice& s, const IntVec& y) {
  auto c = solve_mod2(s.basis.transpose(), y);
  if (!c) throw InconsistencyError("vector is not in the mod-2 image of the sublattice");
  return *c;
}

F2Vec layer_coords(const ModulePtr& m, const IntVec& z, const char* what) {
  auto c = m->layer_coords_of_functional(z);
  if (!c) throw InconsistencyError(std::string(what) + " leaves the 2-torsion layer");
  return *c;
}

Int pair_mod2(const IntMatrix& g, const F2Vec& x, const F2Vec& y) {
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i])
      for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j]) s += g(i, j);
  mpz_fdiv_r_ui(s.get_mpz_t(), s.get_mpz_t(), 2);
  return s;
}

// x^2/2 mod 2 for the 0/1 lift of x.
int half_norm_mod2(const IntMatrix& g, const F2Vec& x) {
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i])
      for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j]) s += g(i, j);
  s /= 2;
  mpz_fdiv_r_ui(s.get_mpz_t(), s.get_mpz_t(), 2);
  return s == 0 ? 0 : 1;
}

F2Vec combine(const std::vector<F2Vec>& vs, const F2Vec& coeff, std::size_t n) {
  F2Vec x(n, 0);
  for (std::size_t k = 0; k < vs.size(); ++k)
    if (coeff[k]) x = f2::add(x, vs[k]);
  return x;
}

F2Vec concat(const F2Vec& a, const F2Vec& b) {
  F2Vec x = a;
  x.insert(x.end(), b.begin(), b.end());
  return x;
}

std::string triple_str(const InvolutionInvariants& i) {
  return "(" + std::to_string(i.r) + "," + std::to_string(i.a) + "," + std::to_string(i.delta) +
         ")";
}

}  // namespace

EnriquesActionTriple validate_triple(const LatticePtr& lattice, const IsometryInvolution& tau,
                                     const IsometryInvolution& sigma) {
  const Lattice& l = *lattice;
  if (!l.is_even() || !l.is_unimodular()) throw InputError("lattice is not even unimodular");
  if (!(l.signature() == Signature{3, 19, 0})) throw InputError("lattice signature is not (3,19)");
  if (!(tau.lattice->gram == l.gram) || !(sigma.lattice->gram == l.gram))
    throw InputError("involutions act on a different lattice");
  if (!(tau.matrix * sigma.matrix == sigma.matrix * tau.matrix))
    throw InputError("involutions do not commute");

  EnriquesActionTriple t;
  t.lattice = lattice;
  t.tau = IsometryInvolution(tau.name, lattice, tau.matrix);
  t.sigma = IsometryInvolution(sigma.name, lattice, sigma.matrix);
  t.tau_sigma = IsometryInvolution(tau.name + "*" + sigma.name, lattice, tau.matrix * sigma.matrix);

  InvolutionInvariants it = involution_invariants(t.tau);
  if (!(it == InvolutionInvariants{10, 10, 0}))
    throw InputError("tau has invariants " + triple_str(it) + " instead of (10,10,0)");

  std::tie(t.tau_plus, t.tau_minus) = eigenlattices(t.tau);
  std::tie(t.sigma_plus, t.sigma_minus) = eigenlattices(t.sigma);
  std::tie(t.ts_plus, t.ts_minus) = eigenlattices(t.tau_sigma);
  Lattice half = rescale(t.tau_plus.as_lattice(), Rat(1, 2));
  if (!half.is_even() || !half.is_unimodular())
    throw InputError("L^tau(1/2) is not even unimodular");

  auto hyperbolic = [](const Sublattice& s) {
    if (s.rank() == 0) return false;
    Signature sg = signature_exact(s.gram);
    return sg.n_plus == 1 && sg.n_zero == 0;
  };
  if (!hyperbolic(t.sigma_plus)) throw InputError("fixed lattice of sigma is not hyperbolic");
  if (!hyperbolic(t.ts_plus)) throw InputError("fixed lattice of tau*sigma is not hyperbolic");

  t.fix_both = joint_eigenlattice(t, 1, 1);
  t.fix_tau_anti_sigma = joint_eigenlattice(t, 1, -1);
  t.anti_tau_fix_sigma = joint_eigenlattice(t, -1, 1);
  t.anti_both = joint_eigenlattice(t, -1, -1);
  if (t.fix_both.rank() + t.fix_tau_anti_sigma.rank() != t.tau_plus.rank() ||
      t.anti_tau_fix_sigma.rank() + t.anti_both.rank() != t.tau_minus.rank() ||
      t.fix_both.rank() + t.anti_tau_fix_sigma.rank() != t.sigma_plus.rank() ||
      t.fix_both.rank() + t.anti_both.rank() != t.ts_plus.rank())
    throw InconsistencyError("joint eigenlattice ranks do not add up");

  t.inv_sigma = involution_invariants(t.sigma);
  t.inv_tau_sigma = involution_invariants(t.tau_sigma);
  return t;
}

const std::vector<ThetaInvariants>& admissible_theta_list() {
  static const std::vector<ThetaInvariants> list = {
      {0, 0, 0}, {1, 1, 1}, {2, 2, 1}, {3, 3, 1}, {4, 2, 0}, {4, 4, 1}, {5, 3, 1}, {5, 5, 1},
      {6, 2, 1}, {6, 4, 1}, {7, 1, 1}, {7, 3, 1}, {8, 0, 0}, {8, 2, 0}, {8, 2, 1}, {9, 1, 1}};
  return list;
}

bool is_admissible_theta(const ThetaInvariants& t) {
  const auto& l = admissible_theta_list();
  return std::find(l.begin(), l.end(), t) != l.end();
}

ThetaInvariants theta_invariants(const EnriquesActionTriple& t) {
  auto half = std::make_shared<const Lattice>(rescale(t.tau_plus.as_lattice("L^tau(1/2)"), Rat(1, 2)));
  IsometryInvolution theta("theta", half, restrict_action(t.tau_plus, t.sigma.matrix));
  ThetaInvariants th = involution_invariants(theta);
  if (th.r != t.fix_both.rank()) throw InconsistencyError("r(theta) differs from rank L^{tau,sigma}");
  if (!is_admissible_theta(th))
    throw InconsistencyError("theta invariants " + triple_str(th) + " are not in the admissible list");
  return th;
}

std::optional<F2Vec> LayerGraph::apply(const F2Vec& x) const {
  if (src.empty() || source->layer_dim() == 0) {
    if (f2::is_zero(x)) return F2Vec(target->layer_dim(), 0);
    return std::nullopt;
  }
  auto c = f2::coordinates(src, x);
  if (!c) return std::nullopt;
  return combine(tgt, *c, target->layer_dim());
}

std::optional<F2Vec> LayerGraph::preimage(const F2Vec& y) const {
  if (tgt.empty() || target->layer_dim() == 0) {
    if (f2::is_zero(y)) return F2Vec(source->layer_dim(), 0);
    return std::nullopt;
  }
  auto c = f2::coordinates(tgt, y);
  if (!c) return std::nullopt;
  return combine(src, *c, source->layer_dim());
}

LayerGraph make_layer_graph(ModulePtr source, ModulePtr target, std::vector<F2Vec> src,
                            std::vector<F2Vec> tgt) {
  const std::size_t ns = source->layer_dim(), nt = target->layer_dim();
  std::vector<F2Vec> joint;
  for (std::size_t k = 0; k < src.size(); ++k) joint.push_back(concat(src[k], tgt[k]));
  const std::size_t r = f2::rank(joint, ns + nt);
  if (f2::rank(src, ns) != r) throw InconsistencyError("glue graph is not a function");
  if (f2::rank(tgt, nt) != r) throw InconsistencyError("glue graph is not injective");
  return LayerGraph{std::move(source), std::move(target), std::move(src), std::move(tgt)};
}

GlueData glue_data(const EnriquesActionTriple& t, const ThetaInvariants& theta) {
  GlueData g;
  g.q_sigma = std::make_shared<const FiniteQuadraticModule>(discriminant_form(t.sigma_plus.as_lattice()));
  g.fix_both_module =
      std::make_shared<const FiniteQuadraticModule>(discriminant_form(t.fix_both.as_lattice()));
  g.fix_tau_anti_sigma_module = std::make_shared<const FiniteQuadraticModule>(
      discriminant_form(t.fix_tau_anti_sigma.as_lattice()));
  const ModulePtr& qs = g.q_sigma;
  const ModulePtr& m1 = g.fix_both_module;
  const ModulePtr& m2 = g.fix_tau_anti_sigma_module;
  if (!qs->is_two_elementary()) throw InconsistencyError("A_{L^sigma} is not 2-elementary");

  auto target = [&](const IntVec& y) { return layer_coords(qs, t.sigma_plus.functional(y), "class in A_q(sigma)"); };

  {
    std::vector<F2Vec> src, tgt;
    for (const auto& y : orthogonal_complement(t.anti_tau_fix_sigma).basis.row_list()) {
      src.push_back(layer_coords(m1, t.fix_both.functional(y), "H+ source"));
      tgt.push_back(target(y));
    }
    g.plus_graph = make_layer_graph(m1, qs, src, tgt);
  }
  {
    std::vector<F2Vec> src, tgt;
    for (const auto& y : orthogonal_complement(t.anti_both).basis.row_list()) {
      src.push_back(layer_coords(m2, t.fix_tau_anti_sigma.functional(y), "H- source"));
      tgt.push_back(target(y));
    }
    g.minus_graph = make_layer_graph(m2, qs, src, tgt);
  }
  g.h_plus = g.plus_graph.image();
  g.h_minus = g.minus_graph.image();

  // Gamma in the source layers: 2A ∩ A[2], the radical of b on A[2], and the
  // projection of L^tau.
  std::vector<F2Vec> p1, p2, from_tau;
  for (const auto& y : t.tau_plus.basis.row_list()) {
    p1.push_back(layer_coords(m1, t.fix_both.functional(y), "L^tau class in A_{L^{tau,sigma}}"));
    p2.push_back(layer_coords(m2, t.fix_tau_anti_sigma.functional(y), "L^tau class in A_{L^tau_sigma}"));
    from_tau.push_back(target(y));
  }
  g.gamma_plus = doubles_in_layer(m1);
  g.gamma_minus = doubles_in_layer(m2);
  if (!(layer_radical(m1) == g.gamma_plus) || !(SubgroupF2(m1, p1) == g.gamma_plus))
    throw InconsistencyError("Gamma(sigma)+ routes disagree");
  if (!(layer_radical(m2) == g.gamma_minus) || !(SubgroupF2(m2, p2) == g.gamma_minus))
    throw InconsistencyError("Gamma(sigma)- routes disagree");
  if (g.gamma_plus.dim() != theta.a || g.gamma_minus.dim() != theta.a)
    throw InconsistencyError("dim Gamma(sigma)+- differs from a(theta)");

  g.gamma_pm = subgroup_intersection(g.h_plus, g.h_minus);
  std::vector<F2Vec> via_plus, via_minus;
  for (const auto& x : g.gamma_plus.basis()) {
    auto y = g.plus_graph.apply(x);
    if (!y) throw InconsistencyError("Gamma(sigma)+ is not inside the H+ source");
    via_plus.push_back(*y);
  }
  for (const auto& x : g.gamma_minus.basis()) {
    auto y = g.minus_graph.apply(x);
    if (!y) throw InconsistencyError("Gamma(sigma)- is not inside the H- source");
    via_minus.push_back(*y);
  }
  if (!(SubgroupF2(qs, from_tau) == g.gamma_pm) || !(SubgroupF2(qs, via_plus) == g.gamma_pm) ||
      !(SubgroupF2(qs, via_minus) == g.gamma_pm))
    throw InconsistencyError("Gamma_pm routes disagree");
  if (g.gamma_pm.dim() != theta.a) throw InconsistencyError("dim Gamma_pm differs from a(theta)");
  if (!is_isotropic(g.gamma_pm, IsotropyMode::Bilinear))
    throw InconsistencyError("Gamma_pm is not isotropic");

  for (std::size_t k = 0; k < g.plus_graph.src.size(); ++k)
    if (m1->q_layer(g.plus_graph.src[k]) != qs->q_layer(g.plus_graph.tgt[k]))
      throw InconsistencyError("H+ graph does not preserve q");
  for (std::size_t k = 0; k < g.minus_graph.src.size(); ++k)
    if (reduce_mod(-m2->q_layer(g.minus_graph.src[k]), 2) != qs->q_layer(g.minus_graph.tgt[k]))
      throw InconsistencyError("H- graph does not reverse q");

  g.c = subgroup_intersection(orthogonal_complement_in(g.h_plus), g.h_minus).dim();
  return g;
}

DerivedInvariants derived_invariants(const EnriquesActionTriple& t, const GlueData& g) {
  DerivedInvariants d;
  const long a = static_cast<long>(t.inv_sigma.a);
  const long al = a - static_cast<long>(g.h_plus.dim()) - static_cast<long>(g.h_minus.dim());
  if (al < 0 || al > 1) throw InconsistencyError("alpha is outside {0,1}");
  d.alpha = static_cast<int>(al);
  d.gamma = g.h_minus.dim() - g.c;
  d.v_q = characteristic_element(g.q_sigma);

  auto delta_of = [&](const LayerGraph& graph) {
    auto pre = graph.preimage(d.v_q);
    return (pre && is_characteristic(graph.source, *pre)) ? 0 : 1;
  };
  d.delta_plus = delta_of(g.plus_graph);
  d.delta_minus = delta_of(g.minus_graph);
  d.delta_via_gamma = g.gamma_pm.contains(d.v_q) ? 0 : 1;

  const std::size_t n = t.lattice->rank();
  F2Vec v = characteristic_class_v(t.sigma);
  auto both = f2::intersection(rows_mod2(t.fix_both.basis), rows_mod2(t.fix_tau_anti_sigma.basis), n);
  d.delta_via_v_sigma = f2::in_span(both, v, n) ? 0 : 1;
  return d;
}

void CheckList::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

void CheckList::equal(std::string name, long lhs, long rhs) {
  add(std::move(name), lhs == rhs, std::to_string(lhs) + " = " + std::to_string(rhs));
}

bool CheckList::all_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

void CheckList::require() const {
  for (const auto& c : checks)
    if (!c.ok) throw InconsistencyError("check failed: " + c.name + " (" + c.detail + ")");
}

void CheckList::append(const CheckList& o) {
  checks.insert(checks.end(), o.checks.begin(), o.checks.end());
}

CheckList companion_identities(const EnriquesActionTriple& t, const ThetaInvariants& theta,
                               const GlueData& g) {
  CheckList r;
  const long rs = static_cast<long>(t.inv_sigma.r), rts = static_cast<long>(t.inv_tau_sigma.r);
  const long as = static_cast<long>(t.inv_sigma.a), ats = static_cast<long>(t.inv_tau_sigma.a);
  const long rt = static_cast<long>(theta.r), at = static_cast<long>(theta.a);
  const long hp = static_cast<long>(g.h_plus.dim()), c = static_cast<long>(g.c);
  r.equal("rank sum r(sigma)+r(tau sigma) = 12+2r(theta)", rs + rts, 12 + 2 * rt);
  r.equal("discriminant difference a(tau sigma)-a(sigma) = 10+2a(theta)-2h+-2c", ats - as,
          10 + 2 * at - 2 * hp - 2 * c);
  r.equal("parity delta(sigma)+delta(tau sigma) = delta(theta) mod 2",
          (t.inv_sigma.delta + t.inv_tau_sigma.delta) % 2, theta.delta);
  return r;
}

ComponentCounts component_counts(const EnriquesActionTriple& t, const ThetaInvariants& theta,
                                 const GlueData& g) {
  ComponentCounts s;
  s.top_sigma = fixed_set_topology(t.inv_sigma);
  s.top_tau_sigma = fixed_set_topology(t.inv_tau_sigma);
  s.s_sigma = s.top_sigma.components;
  s.s_tau_sigma = s.top_tau_sigma.components;
  s.sum = s.s_sigma + s.s_tau_sigma;
  const long base = 1 + static_cast<long>(theta.r) - static_cast<long>(theta.a) -
                    static_cast<long>(t.inv_sigma.a) + static_cast<long>(g.h_plus.dim()) +
                    static_cast<long>(g.c);
  // With no real points on either lift the expression itself must vanish.
  s.sum_formula = s.positive() + base;
  return s;
}

Mod2Dimensions mod2_fixed_dimensions(const EnriquesActionTriple& t, const ThetaInvariants& theta,
                                     const GlueData& g) {
  Mod2Dimensions m;
  m.anti_tau_direct = fixed_dim_mod2(restrict_action(t.tau_minus, t.sigma.matrix));
  m.tau_direct = fixed_dim_mod2(restrict_action(t.tau_plus, t.sigma.matrix));
  std::vector<F2Vec> anti, fix;
  for (const auto& y : t.anti_tau_fix_sigma.basis.row_list()) anti.push_back(coords_mod2(t.tau_minus, y));
  for (const auto& y : t.anti_both.basis.row_list()) anti.push_back(coords_mod2(t.tau_minus, y));
  for (const auto& y : t.fix_both.basis.row_list()) fix.push_back(coords_mod2(t.tau_plus, y));
  for (const auto& y : t.fix_tau_anti_sigma.basis.row_list()) fix.push_back(coords_mod2(t.tau_plus, y));
  m.anti_tau_image = static_cast<long>(f2::rank(anti, t.tau_minus.rank()));
  m.tau_image = static_cast<long>(f2::rank(fix, t.tau_plus.rank()));
  m.anti_tau_formula = 12 - static_cast<long>(theta.a) - static_cast<long>(t.inv_sigma.a) +
                       static_cast<long>(g.h_plus.dim()) + static_cast<long>(g.h_minus.dim());
  m.tau_formula = 10 - static_cast<long>(theta.a);
  return m;
}

DistinguishedClass distinguished_class(const EnriquesActionTriple& t) {
  DistinguishedClass d;
  const Sublattice& lm = t.tau_minus;
  const std::size_t k = lm.rank();
  const IntMatrix& gm = lm.gram;
  for (const auto& y : t.tau_plus.basis.row_list()) d.tau_image.push_back(coords_mod2(lm, y));
  if (f2::rank(d.tau_image, k) != 10) throw InconsistencyError("image of L^tau in L_tau/2L_tau is not 10-dimensional");
  for (const auto& l : d.tau_image) {
    for (std::size_t i = 0; i < k; ++i) {
      F2Vec e(k, 0);
      e[i] = 1;
      if (pair_mod2(gm, e, l) != 0) throw InconsistencyError("image of L^tau is not in the radical");
    }
    if (half_norm_mod2(gm, l) != 0) throw InconsistencyError("x^2/2 does not vanish on the image of L^tau");
  }
  // Complete the image to a basis with two unit vectors.
  std::vector<F2Vec> basis = d.tau_image, extra;
  for (std::size_t i = 0; i < k && extra.size() < 2; ++i) {
    F2Vec e(k, 0);
    e[i] = 1;
    if (!f2::in_span(basis, e, k)) {
      basis.push_back(e);
      extra.push_back(e);
    }
  }
  if (extra.size() != 2) throw InconsistencyError("quotient by the image of L^tau is not 2-dimensional");
  std::vector<F2Vec> classes = {extra[0], extra[1], f2::add(extra[0], extra[1])};
  std::vector<F2Vec> ones;
  for (const auto& x : classes) {
    int v = half_norm_mod2(gm, x);
    if (v == 1) {
      ones.push_back(x);
    } else {
      d.g_classes.push_back(x);
      d.g_values.push_back(v);
    }
  }
  if (ones.size() != 1) throw InconsistencyError("f-class with f^2/2 = 1 is not unique");
  d.f = ones[0];
  d.f_value = 1;
  d.representative = IntVec(t.lattice->rank());
  for (std::size_t i = 0; i < k; ++i)
    if (d.f[i])
      for (std::size_t j = 0; j < d.representative.size(); ++j) d.representative[j] += lm.basis(i, j);
  IntMatrix s = restrict_action(lm, t.sigma.matrix);
  IntVec fi(k);
  for (std::size_t i = 0; i < k; ++i) fi[i] = d.f[i];
  F2Vec moved = f2::add(f2::reduce(s * fi), d.f);
  d.sigma_invariant = f2::in_span(d.tau_image, moved, k);
  return d;
}

CohomologyCase invariant_cohomology_case(const EnriquesActionTriple& t,
                                         const ThetaInvariants& theta, const GlueData& g,
                                         const DerivedInvariants& d, const DistinguishedClass& f,
                                         const ComponentCounts& s) {
  CohomologyCase cc;
  cc.case_a = d.alpha == 1 && d.delta_plus == 0 && d.delta_minus == 0;
  cc.f_vanishes_predicted = d.alpha == 1 && d.delta() > 0;

  // f against the sigma-fixed part of L_tau/2L_tau.
  const Sublattice& lm = t.tau_minus;
  const std::size_t k = lm.rank();
  IntMatrix s_minus = restrict_action(lm, t.sigma.matrix);
  auto fixed = f2::kernel(rows_mod2(s_minus - IntMatrix::identity(k)), k);
  cc.f_vanishes = std::all_of(fixed.begin(), fixed.end(), [&](const F2Vec& x) {
    return pair_mod2(lm.gram, f.f, x) == 0;
  });
  const IntMatrix& gl = t.lattice->gram;
  auto vanishes_on = [&](const Sublattice& p) {
    for (const auto& y : p.basis.row_list()) {
      Int v = dot(f.representative, gl * y);
      if (mpz_odd_p(v.get_mpz_t())) return false;
    }
    return true;
  };
  cc.f_vanishes_on_images = vanishes_on(t.anti_tau_fix_sigma) && vanishes_on(t.anti_both);

  // sigma-fixed part of (L/2L)/F with F = image of L^tau + <f>.
  const std::size_t n = t.lattice->rank();
  std::vector<F2Vec> fl = rows_mod2(t.tau_plus.basis);
  fl.push_back(f2::reduce(f.representative));
  if (f2::rank(fl, n) != 11) throw InconsistencyError("F is not 11-dimensional");
  IntMatrix sm = t.sigma.matrix - IntMatrix::identity(n);
  for (const auto& w : fl) {
    IntVec wi(n);
    for (std::size_t i = 0; i < n; ++i) wi[i] = w[i];
    if (!f2::in_span(fl, f2::reduce(sm * wi), n)) throw InconsistencyError("F is not sigma-invariant");
  }
  // {(x, w) : (sigma - 1) x + sum w_i F_i = 0}; its projection to x is injective.
  std::vector<F2Vec> rows(n, F2Vec(n + fl.size(), 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = mpz_odd_p(sm(i, j).get_mpz_t()) ? 1 : 0;
    for (std::size_t w = 0; w < fl.size(); ++w) rows[i][n + w] = fl[w][i];
  }
  const long preimage_dim = static_cast<long>(f2::kernel(rows, n + fl.size()).size());
  cc.quotient_fixed_direct = preimage_dim - static_cast<long>(fl.size());
  const long base = 12 - static_cast<long>(theta.a) - static_cast<long>(t.inv_sigma.a) +
                    static_cast<long>(g.h_plus.dim()) + static_cast<long>(g.h_minus.dim());
  cc.quotient_fixed_formula = cc.f_vanishes ? base : base - 1;
  cc.integral_dim = (cc.case_a ? 10 : 11) - static_cast<long>(theta.a);

  if (cc.case_a)
    cc.beta_choices = {0};
  else if (s.s_sigma > 0 && s.s_tau_sigma > 0)
    cc.beta_choices = {1};
  else
    cc.beta_choices = {0, 1};
  return cc;
}

BValues b_invariant(const ThetaInvariants& theta, const DerivedInvariants& d,
                    const CohomologyCase& cc, const ComponentCounts& s, int beta) {
  if (std::find(cc.beta_choices.begin(), cc.beta_choices.end(), beta) == cc.beta_choices.end())
    throw InputError("beta is not admissible for this triple");
  BValues b;
  b.beta = beta;
  const long ra = static_cast<long>(theta.r) - static_cast<long>(theta.a);
  const long dl = d.delta();
  b.unified = ra + std::max<long>(1 - d.alpha, dl) + beta;
  b.branch = cc.case_a ? ra : ra + 1 + beta;
  // The count identity gives s-sum; when both lifts are empty the formula value stands in.
  const long sum = s.positive() == 0 ? s.sum_formula : s.sum;
  b.via_counts = sum - s.positive() + std::min<long>(d.alpha, dl) +
                 static_cast<long>(d.gamma) + beta;
  return b;
}

std::vector<int> BrauerEstimate::beta_choices() const {
  std::set<int> s;
  for (const auto& o : options) s.insert(o.beta);
  return {s.begin(), s.end()};
}

std::vector<int> BrauerEstimate::epsilon_choices() const {
  std::set<int> s;
  for (const auto& o : options) s.insert(o.epsilon);
  return {s.begin(), s.end()};
}

std::vector<long> BrauerEstimate::br_choices() const {
  std::set<long> s;
  for (const auto& o : options) s.insert(o.br);
  return {s.begin(), s.end()};
}

std::vector<std::pair<long, long>> component_splits(long s_sigma, long s_tau_sigma) {
  std::set<std::pair<long, long>> out;
  for (long o1 = 0; 2 * o1 <= s_sigma; ++o1)
    for (long o2 = 0; 2 * o2 <= s_tau_sigma; ++o2)
      out.insert({s_sigma - 2 * o1 + s_tau_sigma - 2 * o2, o1 + o2});
  return {out.begin(), out.end()};
}

std::optional<long> nonorientable_count_prediction(const DerivedInvariants& d,
                                                   const ComponentCounts& s) {
  if (s.s_sigma == 0 || s.s_tau_sigma == 0) return std::nullopt;
  const long g = static_cast<long>(d.gamma);
  if (d.alpha == 0) return 1 + g;
  return d.delta() == 0 ? g : 2 + g;
}

BrauerEstimate brauer_estimate(const ThetaInvariants& theta, const DerivedInvariants& d,
                               const CohomologyCase& cc, const ComponentCounts& s) {
  BrauerEstimate e;
  if (s.positive() == 0) {
    e.empty_real_locus = true;
    return e;
  }
  const auto pred = nonorientable_count_prediction(d, s);
  for (int beta : cc.beta_choices) {
    const long b = b_invariant(theta, d, cc, s, beta).unified;
    for (auto [sn, so] : component_splits(s.s_sigma, s.s_tau_sigma)) {
      const long total = sn + so;
      if (b < 2 * total - 2) continue;
      if (pred && sn != *pred) continue;
      // Both lifts with real points: b = 2s - 2 exactly.
      if (s.positive() == 2 && b != 2 * total - 2) continue;
      std::vector<int> eps = b == 2 * total - 2 ? std::vector<int>{1} : std::vector<int>{0, 1};
      for (int ep : eps) e.options.push_back({beta, b, sn, so, total, ep, b + ep});
    }
  }
  if (e.options.empty()) throw InconsistencyError("no admissible real-locus configuration");
  for (const auto& o : e.options) {
    if (o.b < 2 * o.s - 2) throw InconsistencyError("b < 2s - 2");
    if (o.br < o.s) throw InconsistencyError("Brauer dimension below s");
    if (o.br < 2 * o.s - 1) throw InconsistencyError("Brauer dimension below 2s - 1");
    if (o.s_nor + 2 * o.s_or != s.sum) throw InconsistencyError("component split does not add up");
  }
  return e;
}

CheckList vanishing_b_criterion(const ThetaInvariants& theta, const GlueData& g,
                                const DerivedInvariants& d, const ComponentCounts& s,
                                const BValues& b) {
  CheckList r;
  if (s.positive() == 0) return r;
  const bool lhs = b.unified == 0;
  const bool rhs = s.sum == 1 && theta.r == theta.a;
  r.add("b = 0 iff (s-sum = 1 and r(theta) = a(theta)), beta = " + std::to_string(b.beta),
        lhs == rhs, "b = " + std::to_string(b.unified) + ", s-sum = " + std::to_string(s.sum));
  if (lhs) {
    r.add("b = 0 forces alpha = 1", d.alpha == 1);
    r.add("b = 0 forces H+ orthogonal to H-", orthogonal_complement_in(g.h_plus).contains(g.h_minus));
    r.add("b = 0 forces one lift without real points", s.positive() == 1);
  }
  return r;
}

EnriquesAnalysis analyze(const EnriquesActionTriple& t) {
  EnriquesAnalysis a;
  CheckList& ck = a.checks;
  a.theta = theta_invariants(t);
  a.glue = glue_data(t, a.theta);
  a.derived = derived_invariants(t, a.glue);
  const auto& th = a.theta;
  const auto& g = a.glue;
  const auto& d = a.derived;
  const long rt = static_cast<long>(th.r), at = static_cast<long>(th.a);
  const long rs = static_cast<long>(t.inv_sigma.r), as = static_cast<long>(t.inv_sigma.a);
  const long hp = static_cast<long>(g.h_plus.dim()), hm = static_cast<long>(g.h_minus.dim());
  const long c = static_cast<long>(g.c), gp = static_cast<long>(g.gamma_pm.dim());

  ck.equal("delta(sigma, L^{tau,sigma}) = delta(sigma, L^tau_sigma)", d.delta_plus, d.delta_minus);
  ck.equal("delta from v_q in Gamma_pm", d.delta_via_gamma, d.delta_plus);
  ck.equal("delta from v(sigma) mod 2L", d.delta_via_v_sigma, d.delta_plus);
  ck.add("delta(sigma) = 0 forces delta_pm = 0", t.inv_sigma.delta != 0 || d.delta() == 0);
  ck.add("v_q = 0 iff delta(sigma) = 0", f2::is_zero(d.v_q) == (t.inv_sigma.delta == 0));

  bool q_zero = true;
  for (const auto& x : g.gamma_plus.elements())
    if (g.fix_both_module->q_layer(x) != 0) q_zero = false;
  ck.add("delta(theta) = 0 iff q vanishes on Gamma(sigma)+", q_zero == (th.delta == 0));

  ck.add("h+ <= r(theta)", hp <= rt, std::to_string(hp) + " <= " + std::to_string(rt));
  ck.add("h- <= 10 - r(theta)", hm <= 10 - rt, std::to_string(hm) + " <= " + std::to_string(10 - rt));
  ck.add("h+ + h- <= a(sigma) <= h+ + h- + 1", hp + hm <= as && as <= hp + hm + 1);
  ck.add("r(sigma) - a(sigma) >= 2r(theta) - 2h+", rs - as >= 2 * rt - 2 * hp);
  ck.add("r(sigma) + a(sigma) <= 2h- + 2r(theta) + 2", rs + as <= 2 * hm + 2 * rt + 2);
  ck.add("a(theta) <= dim Gamma_pm <= c <= h-", at <= gp && gp <= c && c <= hm);
  ck.add("Gamma_pm inside H+^perp ∩ H-",
         subgroup_intersection(orthogonal_complement_in(g.h_plus), g.h_minus).contains(g.gamma_pm));
  ck.add("0 <= gamma <= 2", d.gamma <= 2, std::to_string(d.gamma));
  ck.add("gamma <= h+ - a(theta)", d.gamma + th.a <= g.h_plus.dim(),
         std::to_string(d.gamma) + " + " + std::to_string(th.a) + " vs " + std::to_string(g.h_plus.dim()));

  ck.append(companion_identities(t, th, g));
  if (t.inv_sigma.delta == 0 || t.inv_tau_sigma.delta == 0)
    ck.equal("parity with one lift of delta 0", (t.inv_sigma.delta + t.inv_tau_sigma.delta) % 2, th.delta);

  a.counts = component_counts(t, th, g);
  const auto& s = a.counts;
  ck.equal("component count sum from topology and from invariants", s.sum, s.sum_formula);
  const long mn = std::min<long>(d.alpha, d.delta());
  ck.add("#positive - min(alpha, delta) >= 0, zero only without real points",
         s.positive() - mn >= 0 && ((s.positive() - mn == 0) == (s.positive() == 0)));
  if (s.s_sigma == 0) ck.add("s(sigma) = 0 forces delta(sigma) = 0 and delta_pm = 0", t.inv_sigma.delta == 0 && d.delta() == 0);

  a.mod2 = mod2_fixed_dimensions(t, th, g);
  ck.equal("dim (L_tau/2)^sigma direct vs formula", a.mod2.anti_tau_direct, a.mod2.anti_tau_formula);
  ck.equal("dim (L_tau/2)^sigma direct vs image of fixed pieces", a.mod2.anti_tau_direct, a.mod2.anti_tau_image);
  ck.equal("dim (L^tau/2)^sigma direct vs formula", a.mod2.tau_direct, a.mod2.tau_formula);
  ck.equal("dim (L^tau/2)^sigma direct vs image of fixed pieces", a.mod2.tau_direct, a.mod2.tau_image);

  a.f_class = distinguished_class(t);
  ck.add("f^2/2 = 1 and the other classes have value 0",
         a.f_class.f_value == 1 && a.f_class.g_values == std::vector<int>{0, 0});
  ck.add("f is sigma-invariant", a.f_class.sigma_invariant);

  a.cohomology = invariant_cohomology_case(t, th, g, d, a.f_class, s);
  const auto& cc = a.cohomology;
  ck.add("f on the fixed part: direct vs mod-2 images", cc.f_vanishes == cc.f_vanishes_on_images);
  ck.add("f on the fixed part: direct vs (alpha, delta) prediction", cc.f_vanishes == cc.f_vanishes_predicted);
  ck.equal("dim ((L/2)/F)^sigma direct vs formula", cc.quotient_fixed_direct, cc.quotient_fixed_formula);
  ck.equal("dim ((L/2)/F)^sigma direct vs case value", cc.quotient_fixed_direct, cc.integral_dim);

  for (int beta : cc.beta_choices) {
    BValues b = b_invariant(th, d, cc, s, beta);
    const std::string tag = " (beta = " + std::to_string(beta) + ")";
    ck.equal("b: unified vs branch" + tag, b.unified, b.branch);
    ck.equal("b: unified vs component counts" + tag, b.unified, b.via_counts);
    ck.add("b >= 0" + tag, b.unified >= 0);
    if (!cc.case_a) ck.add("b >= 1 + beta in case B" + tag, b.unified >= 1 + beta);
    ck.append(vanishing_b_criterion(th, g, d, s, b));
    a.b_values.push_back(b);
  }
  a.brauer = brauer_estimate(th, d, cc, s);
  a.s_nor_predicted = nonorientable_count_prediction(d, s);
  return a;
}

}  // namespace k3lat
