#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3lat/involutions.hpp"

namespace k3lat {

// A K3 lattice with an Enriques involution tau and a commuting lift sigma of
// a real structure. Both lifts sigma and tau*sigma are kept, together with all
// eigenlattices. Superscripts are fixed parts, subscripts anti-fixed parts:
//   fix_both            L^{tau,sigma}  (tau = 1, sigma = 1)
//   fix_tau_anti_sigma  L^tau_sigma    (tau = 1, sigma = -1)
//   anti_tau_fix_sigma  L^sigma_tau    (tau = -1, sigma = 1)
//   anti_both           L_{tau,sigma}  (tau = -1, sigma = -1)
struct EnriquesActionTriple {
  LatticePtr lattice;
  IsometryInvolution tau, sigma, tau_sigma;
  Sublattice tau_plus, tau_minus, sigma_plus, sigma_minus, ts_plus, ts_minus;
  Sublattice fix_both, fix_tau_anti_sigma, anti_tau_fix_sigma, anti_both;
  InvolutionInvariants inv_sigma, inv_tau_sigma;
};

// Throws InputError when L is not even unimodular of signature (3,19), the
// involutions do not commute, tau does not have invariants (10,10,0), or one
// of the lifts has a fixed lattice that is not hyperbolic.
EnriquesActionTriple validate_triple(const LatticePtr& lattice, const IsometryInvolution& tau,
                                     const IsometryInvolution& sigma);

// Invariants (r, a, delta) of theta = sigma restricted to L^tau(1/2).
using ThetaInvariants = InvolutionInvariants;

const std::vector<ThetaInvariants>& admissible_theta_list();
bool is_admissible_theta(const ThetaInvariants& t);
// Throws InconsistencyError when the result is not in the admissible list.
ThetaInvariants theta_invariants(const EnriquesActionTriple& t);

// Homomorphism between 2-torsion layers given by its graph.
struct LayerGraph {
  ModulePtr source, target;
  std::vector<F2Vec> src, tgt;  // generating pairs

  SubgroupF2 domain() const { return SubgroupF2(source, src); }
  SubgroupF2 image() const { return SubgroupF2(target, tgt); }
  std::optional<F2Vec> apply(const F2Vec& x) const;
  std::optional<F2Vec> preimage(const F2Vec& y) const;
};

// Throws InconsistencyError unless the pairs describe an injective homomorphism.
LayerGraph make_layer_graph(ModulePtr source, ModulePtr target, std::vector<F2Vec> src,
                            std::vector<F2Vec> tgt);

// Glue subgroups inside A_{q(sigma)}, realized as A_{L^sigma}.
//   h_plus:  classes of (L^sigma_tau)^perp, graph from the layer of A_{L^{tau,sigma}}
//   h_minus: classes of (L_{tau,sigma})^perp, graph from the layer of A_{L^tau_sigma}
struct GlueData {
  ModulePtr q_sigma, fix_both_module, fix_tau_anti_sigma_module;
  LayerGraph plus_graph, minus_graph;
  SubgroupF2 h_plus, h_minus, gamma_pm;
  SubgroupF2 gamma_plus, gamma_minus;  // Gamma in the two source layers
  std::size_t c = 0;                   // dim(h_plus^perp ∩ h_minus)
};

// Every subgroup is computed along several routes that must agree; a
// disagreement throws InconsistencyError.
GlueData glue_data(const EnriquesActionTriple& t, const ThetaInvariants& theta);

struct DerivedInvariants {
  int alpha = 0;
  int delta_plus = 0, delta_minus = 0;  // from the characteristic-element definition
  int delta_via_gamma = 0;              // v_q in Gamma_pm
  int delta_via_v_sigma = 0;            // v(sigma) in both mod-2 images
  std::size_t gamma = 0;
  F2Vec v_q;
  int delta() const { return delta_plus; }
};

DerivedInvariants derived_invariants(const EnriquesActionTriple& t, const GlueData& g);

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct CheckList {
  std::vector<Check> checks;
  void add(std::string name, bool ok, std::string detail = "");
  // Compares two integers and records "lhs = rhs" as the detail.
  void equal(std::string name, long lhs, long rhs);
  bool all_ok() const;
  // Throws InconsistencyError naming the first failing check.
  void require() const;
  void append(const CheckList& o);
};

// Rank, discriminant and parity identities linking sigma, tau*sigma and theta.
CheckList companion_identities(const EnriquesActionTriple& t, const ThetaInvariants& theta,
                               const GlueData& g);

struct ComponentCounts {
  FixedSetTopology top_sigma, top_tau_sigma;
  long s_sigma = 0, s_tau_sigma = 0;
  long sum = 0;          // from the fixed-set topologies
  long sum_formula = 0;  // from theta and the glue data
  long positive() const { return (s_sigma > 0) + (s_tau_sigma > 0); }
};

ComponentCounts component_counts(const EnriquesActionTriple& t, const ThetaInvariants& theta,
                                 const GlueData& g);

struct Mod2Dimensions {
  long anti_tau_direct = 0, anti_tau_image = 0, anti_tau_formula = 0;
  long tau_direct = 0, tau_image = 0, tau_formula = 0;
};

// Sigma-fixed dimensions on L_tau/2L_tau and L^tau/2L^tau.
Mod2Dimensions mod2_fixed_dimensions(const EnriquesActionTriple& t, const ThetaInvariants& theta,
                                     const GlueData& g);

// The class f of L_tau/2L_tau modulo the image of L^tau with f^2/2 = 1 mod 2.
struct DistinguishedClass {
  std::vector<F2Vec> tau_image;  // image of L^tau, coordinates in the L_tau basis
  F2Vec f;                       // coordinates in the L_tau basis
  IntVec representative;         // a lift of f to L
  int f_value = 0;
  std::vector<F2Vec> g_classes;  // the other two nonzero classes
  std::vector<int> g_values;
  bool sigma_invariant = false;
};

DistinguishedClass distinguished_class(const EnriquesActionTriple& t);

struct CohomologyCase {
  bool case_a = false;      // alpha = 1 and delta = 0
  bool f_vanishes = false;  // f on the sigma-fixed part of L_tau/2L_tau, evaluated directly
  bool f_vanishes_on_images = false;  // same, against the mod-2 images of the pieces
  bool f_vanishes_predicted = false;
  long quotient_fixed_direct = 0;   // dim of sigma-fixed part of (L/2L)/F
  long quotient_fixed_formula = 0;  // 11 or 12 minus a(theta) + ... depending on f
  long integral_dim = 0;            // 10 - a(theta) in case A, 11 - a(theta) otherwise
  std::vector<int> beta_choices;
};

CohomologyCase invariant_cohomology_case(const EnriquesActionTriple& t,
                                         const ThetaInvariants& theta, const GlueData& g,
                                         const DerivedInvariants& d, const DistinguishedClass& f,
                                         const ComponentCounts& s);

struct BValues {
  int beta = 0;
  long unified = 0;   // r - a + max(1 - alpha, delta) + beta
  long branch = 0;    // case A / case B value
  long via_counts = 0;  // from component counts, gamma and min(alpha, delta)
};

BValues b_invariant(const ThetaInvariants& theta, const DerivedInvariants& d,
                    const CohomologyCase& cc, const ComponentCounts& s, int beta);

// One admissible real-locus configuration.
struct BrauerOption {
  int beta = 0;
  long b = 0;
  long s_nor = 0, s_or = 0, s = 0;
  int epsilon = 0;
  long br = 0;
};

struct BrauerEstimate {
  bool empty_real_locus = false;  // both lifts have no real points; nothing is estimated
  std::vector<BrauerOption> options;
  std::vector<int> beta_choices() const;
  std::vector<int> epsilon_choices() const;
  std::vector<long> br_choices() const;
};

// (s_nor, s_or) pairs compatible with the component counts of the two lifts.
// Each component of a lift's real part is either preserved by tau, giving a
// non-orientable component of Y(R), or paired with another one.
std::vector<std::pair<long, long>> component_splits(long s_sigma, long s_tau_sigma);

// Expected number of non-orientable components; only defined when both lifts
// have real points.
std::optional<long> nonorientable_count_prediction(const DerivedInvariants& d,
                                                   const ComponentCounts& s);

BrauerEstimate brauer_estimate(const ThetaInvariants& theta, const DerivedInvariants& d,
                               const CohomologyCase& cc, const ComponentCounts& s);

// b = 0 iff (s-sum = 1 and r(theta) = a(theta)), with its consequences.
CheckList vanishing_b_criterion(const ThetaInvariants& theta, const GlueData& g,
                                const DerivedInvariants& d, const ComponentCounts& s,
                                const BValues& b);

struct EnriquesAnalysis {
  ThetaInvariants theta;
  GlueData glue;
  DerivedInvariants derived;
  ComponentCounts counts;
  Mod2Dimensions mod2;
  DistinguishedClass f_class;
  CohomologyCase cohomology;
  std::vector<BValues> b_values;
  BrauerEstimate brauer;
  std::optional<long> s_nor_predicted;
  CheckList checks;
};

// Runs every stage on a validated triple. Failed cross-checks are recorded in
// `checks`; structural failures throw InconsistencyError.
EnriquesAnalysis analyze(const EnriquesActionTriple& t);

}  // namespace k3lat
