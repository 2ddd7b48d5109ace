#include "k3lat/involutions.hpp"

namespace k3lat {

IsometryInvolution::IsometryInvolution(std::string n, LatticePtr l, IntMatrix m)
    : name(std::move(n)), lattice(std::move(l)), matrix(std::move(m)) {
  const std::size_t r = lattice->rank();
  if (matrix.rows() != r || matrix.cols() != r)
    throw InputError("involution matrix size does not match the lattice rank");
  if (!(matrix * matrix == IntMatrix::identity(r))) throw InputError("matrix is not an involution");
  if (!(matrix.transpose() * lattice->gram * matrix == lattice->gram))
    throw InputError("matrix is not an isometry of the lattice");
}

long FixedSetTopology::euler_characteristic() const {
  switch (kind) {
    case FixedSetKind::Empty:
    case FixedSetKind::TwoTori:
      return 0;
    case FixedSetKind::Generic:
      return 2 - 2 * genus + 2 * spheres;
  }
  return 0;
}

long FixedSetTopology::total_betti_mod2() const {
  switch (kind) {
    case FixedSetKind::Empty:
      return 0;
    case FixedSetKind::TwoTori:
      return 8;
    case FixedSetKind::Generic:
      return 2 + 2 * genus + 2 * spheres;
  }
  return 0;
}

std::pair<Sublattice, Sublattice> eigenlattices(const IsometryInvolution& phi) {
  const std::size_t n = phi.lattice->rank();
  const IntMatrix id = IntMatrix::identity(n);
  // Columns act on coordinates, so the rows of the kernel basis are the vectors.
  Sublattice plus = make_sublattice(phi.lattice, kernel_basis_int(phi.matrix - id));
  Sublattice minus = make_sublattice(phi.lattice, kernel_basis_int(phi.matrix + id));
  if (plus.rank() + minus.rank() != n) throw InconsistencyError("eigenlattice ranks do not add up");
  if (!(plus.basis * phi.lattice->gram * minus.basis.transpose()).is_zero())
    throw InconsistencyError("eigenlattices are not orthogonal");
  return {plus, minus};
}

InvolutionInvariants invariants_of_fixed_lattice(const Lattice& fixed) {
  InvolutionInvariants inv;
  inv.r = fixed.rank();
  if (inv.r == 0) return inv;
  if (!fixed.is_even()) throw InputError("fixed lattice is not even");
  auto m = std::make_shared<const FiniteQuadraticModule>(discriminant_form(fixed));
  if (!m->is_two_elementary()) throw InconsistencyError("fixed lattice is not 2-elementary");
  inv.a = m->layer_dim();
  bool integral_q = true;
  for (const auto& g : m->gens)
    if (m->q(g).get_den() != 1) integral_q = false;
  inv.delta = integral_q ? 0 : 1;
  // q is integral exactly when b(x,x) vanishes, i.e. the characteristic element is 0.
  const bool v_zero = inv.a == 0 || f2::is_zero(characteristic_element(m));
  if (v_zero != integral_q) throw InconsistencyError("delta disagrees with the characteristic element");
  return inv;
}

InvolutionInvariants involution_invariants(const IsometryInvolution& phi) {
  const Lattice& l = *phi.lattice;
  if (!l.is_even() || !l.is_unimodular())
    throw InputError("involution invariants need an even unimodular lattice");
  auto [plus, minus] = eigenlattices(phi);
  InvolutionInvariants inv = invariants_of_fixed_lattice(plus.as_lattice());
  if (inv.a > std::min(inv.r, l.rank() - inv.r))
    throw InconsistencyError("a exceeds min(r, rank - r)");
  return inv;
}

FixedSetTopology fixed_set_topology(const InvolutionInvariants& inv) {
  const long r = static_cast<long>(inv.r), a = static_cast<long>(inv.a);
  FixedSetTopology t;
  if (r == 10 && a == 10 && inv.delta == 0) {
    t.kind = FixedSetKind::Empty;
    return t;
  }
  if (r == 10 && a == 8 && inv.delta == 0) {
    t.kind = FixedSetKind::TwoTori;
    t.components = 2;
    return t;
  }
  if ((r - a) % 2 != 0 || (22 - r - a) % 2 != 0) throw InputError("invariants violate parity");
  t.genus = (22 - r - a) / 2;
  t.spheres = (r - a) / 2;
  if (t.genus < 0 || t.spheres < 0) throw InputError("invariants give negative genus or sphere count");
  t.components = t.spheres + 1;
  return t;
}

F2Vec characteristic_class_v(const IsometryInvolution& phi) {
  const Lattice& l = *phi.lattice;
  if (!l.is_unimodular()) throw InputError("characteristic class needs a unimodular lattice");
  // x.phi(x) mod 2 is linear in x, so the basis vectors determine v.
  IntMatrix gm = l.gram * phi.matrix;
  IntVec rhs(l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i) rhs[i] = gm(i, i);
  auto v = solve_mod2(l.gram, rhs);
  if (!v) throw InconsistencyError("no characteristic class on a unimodular lattice");
  return *v;
}

bool fixed_lattice_is_hyperbolic(const IsometryInvolution& phi) {
  auto plus = eigenlattices(phi).first;
  if (plus.rank() == 0) return false;
  Signature s = signature_exact(plus.gram);
  return s.n_plus == 1 && s.n_zero == 0;
}

long euler_char_from_r(std::size_t r, SurfaceKind kind) {
  const long rr = static_cast<long>(r);
  return kind == SurfaceKind::K3 ? 2 * (rr - 10) : 2 * (rr - 4);
}

std::size_t r_from_euler(long chi, SurfaceKind kind) {
  if (chi % 2 != 0) throw InputError("Euler characteristic must be even here");
  const long r = chi / 2 + (kind == SurfaceKind::K3 ? 10 : 4);
  if (r < 0) throw InputError("Euler characteristic gives a negative rank");
  return static_cast<std::size_t>(r);
}

}  // namespace k3lat
