#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "k3lat/enriques.hpp"

namespace k3lat {

// Integer invariants of a real Enriques surface together with one admissible
// choice of beta and one split of the real components. Profiles are purely
// syntactic: nothing here certifies that a lattice configuration exists.
struct InvariantProfile {
  int r_theta = 0, a_theta = 0, delta_theta = 0;
  int r_sigma = 0, a_sigma = 0, delta_sigma = 0;
  int r_tausigma = 0, a_tausigma = 0, delta_tausigma = 0;
  int h_plus = 0, h_minus = 0, c = 0, gamma = 0, alpha = 0, delta_pm = 0, beta = 0;
  int s_sigma = 0, s_tausigma = 0;
  int s_nor = 0, s_or = 0, s = 0, b = 0;

  auto operator<=>(const InvariantProfile&) const = default;
  bool empty_real_locus() const { return s_sigma == 0 && s_tausigma == 0; }
  std::string to_string() const;
};

struct EnumerationOptions {
  // #{positive s} - min(alpha, delta_pm) >= 0, with equality only without real points.
  bool positive_count_bound = true;
};

// Sorted and duplicate free.
std::vector<InvariantProfile> enumerate_profiles(const EnumerationOptions& opt = {});

// Profiles restricted to one theta triple; enumerate_profiles merges these.
std::vector<InvariantProfile> enumerate_partition(const ThetaInvariants& theta,
                                                  const EnumerationOptions& opt);

// b = 0 iff (s-sum = 1 and r(theta) = a(theta)); when b = 0 also alpha = 1,
// gamma = 0 (H+ orthogonal to H-) and exactly one lift has real points.
// Profiles without real points are accepted unconditionally.
bool vanishing_b_consistent(const InvariantProfile& p);

struct BoundReport {
  int max_s = 0, max_s_nor = 0;
  std::vector<InvariantProfile> s_witnesses, s_nor_witnesses;
  // 2s <= 2 + r(theta) - a(theta) + max(1 - alpha, delta) + beta on every profile.
  bool intermediate_bound_holds = true;
  std::size_t profile_count = 0;
};

BoundReport bound_report(const std::vector<InvariantProfile>& profiles);

// Profiles of an analyzed triple, one per admissible real-locus configuration.
std::vector<InvariantProfile> profiles_of(const EnriquesActionTriple& t, const EnriquesAnalysis& a);

struct CrossCheckReport {
  std::size_t triples = 0, profiles = 0, missing = 0;
  std::vector<std::string> missing_names;
  std::set<ThetaInvariants> realized_theta;
  bool all_theta_admissible = true;
  bool ok() const { return missing == 0 && all_theta_admissible; }
};

struct NamedAnalysis {
  std::string name;
  const EnriquesActionTriple* triple;
  const EnriquesAnalysis* analysis;
};

CrossCheckReport catalog_cross_check(const std::vector<NamedAnalysis>& analyses,
                                     const std::vector<InvariantProfile>& profiles);

}  // namespace k3lat
