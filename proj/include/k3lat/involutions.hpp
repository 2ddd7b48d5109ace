#pragma once

#include <string>
#include <utility>

#include "k3lat/lattice_core.hpp"

namespace k3lat {

// An involutive isometry acting on coordinate columns: x -> matrix * x.
struct IsometryInvolution {
  std::string name;
  LatticePtr lattice;
  IntMatrix matrix;

  IsometryInvolution() = default;
  // Throws InputError unless matrix^2 = 1 and matrix^T G matrix = G.
  IsometryInvolution(std::string name, LatticePtr lattice, IntMatrix matrix);

  IntVec apply(const IntVec& x) const { return matrix * x; }
};

struct InvolutionInvariants {
  std::size_t r = 0, a = 0;
  int delta = 0;
  bool operator==(const InvolutionInvariants&) const = default;
  auto operator<=>(const InvolutionInvariants&) const = default;
};

enum class FixedSetKind { Empty, TwoTori, Generic };

struct FixedSetTopology {
  FixedSetKind kind = FixedSetKind::Generic;
  long genus = 0;    // genus of the one higher-genus component (Generic only)
  long spheres = 0;  // number of extra spheres (Generic only)
  long components = 0;
  long euler_characteristic() const;
  // Total Z/2 Betti number of the fixed surface.
  long total_betti_mod2() const;
};

// (plus, minus) = saturated kernels of matrix - 1 and matrix + 1.
std::pair<Sublattice, Sublattice> eigenlattices(const IsometryInvolution& phi);

// (r, a, delta) of an involution on an even unimodular lattice.
InvolutionInvariants involution_invariants(const IsometryInvolution& phi);
// Same invariants read off a 2-elementary even lattice standing for the fixed part.
InvolutionInvariants invariants_of_fixed_lattice(const Lattice& fixed);

FixedSetTopology fixed_set_topology(const InvolutionInvariants& inv);

// The class v in L/2L with x.phi(x) = x.v mod 2 for all x; L unimodular.
F2Vec characteristic_class_v(const IsometryInvolution& phi);

// True when the fixed lattice has signature (1, r-1).
bool fixed_lattice_is_hyperbolic(const IsometryInvolution& phi);

enum class SurfaceKind { K3, Enriques };
long euler_char_from_r(std::size_t r, SurfaceKind kind);
std::size_t r_from_euler(long chi, SurfaceKind kind);

}  // namespace k3lat
