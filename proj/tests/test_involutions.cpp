#include <doctest.h>

#include "k3lat/catalog.hpp"

using namespace k3lat;

TEST_CASE("reference involutions") {
  const auto tau = catalog::tau_reference();
  CHECK(involution_invariants(tau) == InvolutionInvariants{10, 10, 0});
  CHECK(fixed_set_topology(involution_invariants(tau)).kind == FixedSetKind::Empty);
  CHECK(fixed_lattice_is_hyperbolic(tau));

  const auto sigma = catalog::sigma_reference();
  const auto inv = involution_invariants(sigma);
  CHECK(inv == InvolutionInvariants{1, 1, 1});
  const auto top = fixed_set_topology(inv);
  CHECK(top.genus == 10);
  CHECK(top.components == 1);
}

TEST_CASE("E8 involutions from orthogonal roots") {
  const auto& list = catalog::e8_involutions();
  CHECK(list[0].invariants == InvolutionInvariants{8, 0, 0});
  CHECK(list[1].invariants == InvolutionInvariants{0, 0, 0});
  auto e8 = std::make_shared<const Lattice>(catalog::e8());
  // One reflection fixes the orthogonal E7.
  const IntVec& r = catalog::e8_roots().front();
  IntMatrix s = IntMatrix::identity(8);
  const IntVec gr = e8->gram * r;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) s(i, j) += r[i] * gr[j];
  CHECK(involution_invariants(IsometryInvolution("s", e8, s)) == InvolutionInvariants{7, 1, 1});
  for (const auto& e : list) {
    CAPTURE(e.name);
    const auto& i = e.invariants;
    CHECK(i.a <= std::min(i.r, 8 - i.r));
    CHECK((i.r - i.a) % 2 == 0);
  }
}

TEST_CASE("invalid matrices are rejected") {
  auto u = std::make_shared<const Lattice>(catalog::hyperbolic_plane());
  CHECK_THROWS_WITH_AS(IsometryInvolution("x", u, IntMatrix{{1, 1}, {0, 1}}),
                       "matrix is not an involution", InputError);
  CHECK_THROWS_WITH_AS(IsometryInvolution("x", u, IntMatrix{{1, 0}, {0, -1}}),
                       "matrix is not an isometry of the lattice", InputError);
  CHECK_THROWS_AS(IsometryInvolution("x", u, IntMatrix::identity(3)), InputError);
}

TEST_CASE("characteristic class of an involution") {
  for (const auto& phi : {catalog::tau_reference(), catalog::sigma_reference()}) {
    const F2Vec v = characteristic_class_v(phi);
    const Lattice& l = *phi.lattice;
    for (std::size_t i = 0; i < l.rank(); ++i)
      for (std::size_t j = i; j < l.rank(); ++j) {
        IntVec x(l.rank());
        x[i] += 1;
        x[j] += 1;
        Int lhs = l.pair(x, phi.apply(x));
        Int rhs = 0;
        for (std::size_t k = 0; k < l.rank(); ++k)
          if (v[k]) rhs += (l.gram * x)[k];
        CHECK((lhs - rhs) % 2 == 0);
      }
  }
}

TEST_CASE("fixed-set topology and Euler characteristic") {
  CHECK(fixed_set_topology({10, 8, 0}).kind == FixedSetKind::TwoTori);
  CHECK(fixed_set_topology({10, 8, 0}).components == 2);
  CHECK_THROWS_AS(fixed_set_topology({3, 2, 1}), InputError);
  for (std::size_t r = 1; r <= 20; ++r)
    for (std::size_t a = r % 2; a <= std::min(r, 22 - r); a += 2) {
      for (int d : {0, 1}) {
        if (r == 10 && a == 10 && d == 0) continue;
        const auto t = fixed_set_topology({r, a, d});
        CHECK(t.euler_characteristic() == euler_char_from_r(r, SurfaceKind::K3));
        CHECK(r_from_euler(t.euler_characteristic(), SurfaceKind::K3) == r);
        if (t.kind == FixedSetKind::Generic) CHECK(t.total_betti_mod2() == 24 - 2 * static_cast<long>(a));
      }
    }
  CHECK(euler_char_from_r(4, SurfaceKind::Enriques) == 0);
}
