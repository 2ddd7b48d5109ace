#pragma once

#include <memory>
#include <string>
#include <vector>

#include "k3lat/exact_linalg.hpp"
#include "k3lat/finite_quadratic.hpp"

namespace k3lat {

struct Lattice {
  std::string name;
  IntMatrix gram;

  Lattice() = default;
  Lattice(std::string name, IntMatrix gram);

  std::size_t rank() const { return gram.rows(); }
  Int det() const { return determinant(gram); }
  bool is_nondegenerate() const { return det() != 0; }
  bool is_even() const;
  bool is_unimodular() const { return abs(det()) == 1; }
  Signature signature() const { return signature_exact(gram); }
  Int norm(const IntVec& x) const { return dot(x, gram * x); }
  Int pair(const IntVec& x, const IntVec& y) const { return dot(x, gram * y); }
};

using LatticePtr = std::shared_ptr<const Lattice>;

// A sublattice in ambient coordinates. The basis is kept in Hermite normal
// form, so two sublattices are equal exactly when their bases are.
struct Sublattice {
  LatticePtr ambient;
  IntMatrix basis;  // rows
  IntMatrix gram;   // basis * G * basis^T
  bool primitive = false;

  std::size_t rank() const { return basis.rows(); }
  Lattice as_lattice(const std::string& name = "") const { return Lattice(name, gram); }
  // The integral functional basis * G * y describing y's pairing with the sublattice.
  IntVec functional(const IntVec& y) const;
  bool operator==(const Sublattice& o) const { return basis == o.basis; }
};

Sublattice make_sublattice(const LatticePtr& ambient, const std::vector<IntVec>& vectors);
Sublattice whole_lattice(const LatticePtr& ambient);

Lattice rescale(const Lattice& l, const Rat& a);
Lattice direct_sum(const std::vector<Lattice>& ls);
FiniteQuadraticModule discriminant_form(const Lattice& l);
Sublattice orthogonal_complement(const Sublattice& s);
// Sum of sublattices followed by saturation.
Sublattice primitive_span(const LatticePtr& ambient, const std::vector<Sublattice>& parts);

// L / (S_1 + ... + S_k) inside the sum of the discriminant groups A_{S_i}.
// Elements are concatenated coordinate vectors over the summands' generators.
struct GlueGroup {
  LatticePtr ambient;
  std::vector<Sublattice> summands;
  std::vector<ModulePtr> modules;
  std::vector<std::size_t> offsets;  // start of each summand's block
  IntVec moduli;
  std::vector<IntVec> generators;  // images of the ambient basis vectors
  Int order;

  IntVec element_of(const IntVec& y) const;
  IntVec component(const IntVec& x, std::size_t i) const;
  IntVec add(const IntVec& x, const IntVec& y) const;
  // Pairing and norm of the i-th components.
  Rat b_component(std::size_t i, const IntVec& x, const IntVec& y) const;
  Rat q_component(std::size_t i, const IntVec& x) const;
  // Exhaustive element list, sorted.
  std::vector<IntVec> elements() const;
  // Order of the projection onto the summands listed.
  Int projection_order(const std::vector<std::size_t>& which) const;
};

// Order of the subgroup of (+) Z/moduli_i generated by gens.
Int subgroup_order(const std::vector<IntVec>& gens, const IntVec& moduli);

GlueGroup glue_group(const LatticePtr& ambient, const std::vector<Sublattice>& summands);
GlueGroup glue_group(const LatticePtr& ambient, const Sublattice& s1, const Sublattice& s2);

}  // namespace k3lat
