#pragma once

#include <deque>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "k3lat/catalog.hpp"
#include "k3lat/enumerate.hpp"

namespace k3test {

using namespace k3lat;

// The reference triple followed by every hyperbolic member of the block family,
// each validated and analyzed once.
struct CatalogSet {
  std::deque<EnriquesActionTriple> triples;
  std::deque<EnriquesAnalysis> analyses;
  std::vector<NamedAnalysis> named;
};

const CatalogSet& catalog_set();

struct Decomposition {
  std::string name;
  LatticePtr lattice;
  Sublattice s1, s2, s3;
};

// Three-summand decompositions of unimodular lattices: orthogonal root
// groups in E8, hyperbolic planes, and the K3 eigenlattice pieces.
std::vector<Decomposition> three_summand_decompositions();

struct ComplementResult {
  std::size_t glue_order = 0, gamma12 = 0, gamma23 = 0, gamma13 = 0;
  std::size_t complement = 0, sum = 0;
  bool sets_equal = false;
  bool counting = false;  // |A_{S2}| = |Gamma(S1,S2)| |Gamma(S2,S3)|
};

// Brute force over all elements of the glue group.
ComplementResult complement_identity(const Decomposition& d);

// Discriminant group of a nondegenerate lattice by closing the dual basis
// under addition modulo the lattice; no Smith form involved.
struct DualCosets {
  std::size_t order = 0;
  std::map<Int, std::size_t> order_histogram;  // element order -> count
  std::map<Rat, std::size_t> b_self;           // b(x,x) mod 1 -> count
  std::map<Rat, std::size_t> q_values;         // q(x) mod 2 -> count, even lattices
};

DualCosets dual_coset_oracle(const Lattice& l);
// The same statistics read off the module's invariant-factor representation.
DualCosets module_statistics(const FiniteQuadraticModule& a);

IntMatrix random_symmetric(std::mt19937& rng, std::size_t n, long lo, long hi, bool even);

}  // namespace k3test
