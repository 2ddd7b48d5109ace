#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "k3lat/exact_linalg.hpp"

namespace k3lat {

// Discriminant module S*/S of a nondegenerate lattice S.
//
// Elements of S* are written in S-coordinates; S itself is Z^n there. An
// element is usually handed over by its pairing functional z = G x, which is
// integral for every x in S*. Group coordinates are (coord_map * z) mod orders.
// The 2-torsion layer Ann(2) has the basis (order_i / 2) * gens_i over the
// even orders, and subgroup arithmetic happens there as Z/2 coordinates.
struct FiniteQuadraticModule {
  IntMatrix gram;
  bool even = false;
  std::vector<RatVec> gens;  // nontrivial cyclic generators, entries in [0,1)
  IntVec orders;             // order of each generator, each dividing the next
  IntMatrix coord_map;       // one row per generator
  std::vector<RatVec> layer;              // basis of Ann(2)
  std::vector<std::size_t> layer_source;  // generator index of each layer vector

  std::size_t rank() const { return gram.rows(); }
  std::size_t layer_dim() const { return layer.size(); }
  Int order() const;
  bool is_two_elementary() const;

  // Form values, reduced into [0,1) and [0,2).
  Rat b(const RatVec& x, const RatVec& y) const;
  Rat q(const RatVec& x) const;

  IntVec coords_of_functional(const IntVec& z) const;
  std::optional<F2Vec> layer_coords_of_functional(const IntVec& z) const;
  RatVec rep(const IntVec& coords) const;
  RatVec layer_rep(const F2Vec& x) const;
  Rat b_layer(const F2Vec& x, const F2Vec& y) const;
  Rat q_layer(const F2Vec& x) const;
  // Matrix of 2*b on the layer basis, as Z/2 entries.
  std::vector<F2Vec> layer_pairing() const;
};

using ModulePtr = std::shared_ptr<const FiniteQuadraticModule>;

// Reduce a rational into [0, m).
Rat reduce_mod(const Rat& x, long m);
RatVec reduce_mod1(const RatVec& v);

// A subgroup of the 2-torsion layer, stored as an echelon basis.
class SubgroupF2 {
 public:
  SubgroupF2() = default;
  SubgroupF2(ModulePtr parent, std::vector<F2Vec> gens);

  const ModulePtr& parent() const { return parent_; }
  const std::vector<F2Vec>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  bool contains(const F2Vec& x) const;
  bool contains(const SubgroupF2& h) const;
  std::vector<F2Vec> elements() const;
  bool operator==(const SubgroupF2& o) const;

 private:
  ModulePtr parent_;
  std::vector<F2Vec> basis_;
};

SubgroupF2 ann2(const ModulePtr& a);
SubgroupF2 zero_subgroup(const ModulePtr& a);
// Kernel of the bilinear form restricted to Ann(2).
SubgroupF2 layer_radical(const ModulePtr& a);
// 2A intersected with Ann(2).
SubgroupF2 doubles_in_layer(const ModulePtr& a);

SubgroupF2 orthogonal_complement_in(const SubgroupF2& h);

enum class IsotropyMode { Bilinear, Quadratic };
bool is_isotropic(const SubgroupF2& h, IsotropyMode mode);

// The v with b(x,x) = b(x,v) on Ann(2); requires a nondegenerate layer.
F2Vec characteristic_element(const ModulePtr& a);
// True when b(x,x) = b(x,v) for every x of the layer (degenerate forms allowed).
bool is_characteristic(const ModulePtr& a, const F2Vec& v);

SubgroupF2 subgroup_sum(const SubgroupF2& h1, const SubgroupF2& h2);
SubgroupF2 subgroup_intersection(const SubgroupF2& h1, const SubgroupF2& h2);

}  // namespace k3lat
