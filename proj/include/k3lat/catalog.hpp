#pragma once

#include <string>
#include <vector>

#include "k3lat/involutions.hpp"

namespace k3lat::catalog {

Lattice hyperbolic_plane();           // U
Lattice e8();                         // negative definite, Bourbaki ordering
Lattice diagonal_rank_one(long k);    // <k>
Lattice k3_lattice();                 // U + U + U + E8 + E8

// Named standard lattices: "U", "U(2)", "E8", "E8(2)", "A1", "K3", or "<k>".
Lattice named_lattice(const std::string& key);
std::vector<std::string> lattice_names();

LatticePtr k3_ptr();

// (x, y, z, a, b) -> (-x, z, y, b, a) on U1 + U2 + U3 + E8 + E8.
IsometryInvolution tau_reference();
// c1 <-> c2 on U1, -1 on everything else.
IsometryInvolution sigma_reference();

enum class UAction { Plus, Minus, Swap, MinusSwap };

// Per-summand description of an involution of the K3 lattice. The pair
// actions apply to (U2, U3) and (E8, E8); with the exchange flag set the two
// factors are also interchanged.
struct BlockSpec {
  UAction u1 = UAction::Plus;
  UAction u2 = UAction::Plus, u3 = UAction::Plus;
  bool exchange_u = false;
  std::size_t e8_first = 0, e8_second = 0;  // indices into e8_involutions()
  bool exchange_e8 = false;

  std::string name() const;
};

struct E8Involution {
  std::string name;
  IntMatrix matrix;
  InvolutionInvariants invariants;
};

// Involutions of E8 given by plus or minus a product of reflections in
// mutually orthogonal roots, one per distinct invariant triple. Index 0 is
// the identity, index 1 is -1.
const std::vector<E8Involution>& e8_involutions();

struct FamilyMember {
  BlockSpec spec;
  IsometryInvolution sigma;
  // Both sigma and tau*sigma have hyperbolic fixed lattices.
  bool hyperbolic = false;
};

// Throws InputError for specs whose pair actions do not commute with tau.
IsometryInvolution block_involution(const BlockSpec& spec);
// Specs over the given E8 action indices; every combination is produced.
std::vector<FamilyMember> block_sigma_family(const std::vector<BlockSpec>& specs);
// The default coverage family: every hyperbolic combination of U actions and
// E8 actions.
std::vector<BlockSpec> default_family_specs();

std::vector<std::string> involution_names();
IsometryInvolution named_involution(const std::string& name);

// Roots of the negative definite E8 in the Bourbaki basis.
const std::vector<IntVec>& e8_roots();

}  // namespace k3lat::catalog
