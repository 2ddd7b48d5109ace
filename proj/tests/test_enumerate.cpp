#include <doctest.h>

#include "support.hpp"

using namespace k3lat;

namespace {

const std::vector<InvariantProfile>& profiles() {
  static const auto p = enumerate_profiles();
  return p;
}

}  // namespace

TEST_CASE("bounds on components") {
  const BoundReport b = bound_report(profiles());
  CHECK(b.max_s == 6);
  CHECK(b.max_s_nor == 4);
  CHECK(b.intermediate_bound_holds);
  REQUIRE_FALSE(b.s_witnesses.empty());
  for (const auto& w : b.s_witnesses) {
    CHECK(w.s == 6);
    CHECK(w.r_theta - w.a_theta == 8);
  }
  for (const auto& w : b.s_nor_witnesses) CHECK(w.s_nor == 4);
}

TEST_CASE("enumeration is sorted, duplicate free and deterministic") {
  const auto& p = profiles();
  CHECK(std::is_sorted(p.begin(), p.end()));
  CHECK(std::adjacent_find(p.begin(), p.end()) == p.end());
  CHECK(enumerate_profiles() == p);
  std::vector<InvariantProfile> merged;
  for (const auto& th : admissible_theta_list()) {
    auto part = enumerate_partition(th, {});
    merged.insert(merged.end(), part.begin(), part.end());
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  CHECK(merged == p);
}

TEST_CASE("every profile satisfies the defining constraints") {
  for (const auto& p : profiles()) {
    CAPTURE(p.to_string());
    CHECK(is_admissible_theta({static_cast<std::size_t>(p.r_theta), static_cast<std::size_t>(p.a_theta), p.delta_theta}));
    CHECK(p.r_sigma + p.r_tausigma == 12 + 2 * p.r_theta);
    CHECK(p.a_tausigma - p.a_sigma == 10 + 2 * p.a_theta - 2 * p.h_plus - 2 * p.c);
    CHECK(p.a_sigma == p.h_plus + p.h_minus + p.alpha);
    CHECK(p.gamma == p.h_minus - p.c);
    CHECK(p.gamma <= 2);
    CHECK(p.h_plus <= p.r_theta);
    CHECK(p.h_minus <= 10 - p.r_theta);
    if (p.delta_sigma == 0) CHECK(p.delta_pm == 0);
    if (!p.empty_real_locus()) {
      CHECK(p.s_nor + p.s_or == p.s);
      CHECK(p.b >= 2 * p.s - 2);
    }
    CHECK(vanishing_b_consistent(p));
  }
}

TEST_CASE("a connected real locus with b = 0 exists") {
  bool found = false;
  for (const auto& p : profiles())
    if (!p.empty_real_locus() && p.b == 0) {
      found = true;
      CHECK(p.s_sigma + p.s_tausigma == 1);
      CHECK(p.r_theta == p.a_theta);
    }
  CHECK(found);
}

TEST_CASE("catalog profiles are contained in the enumeration") {
  const auto r = catalog_cross_check(k3test::catalog_set().named, profiles());
  CHECK(r.ok());
  CHECK(r.triples == k3test::catalog_set().named.size());
  CHECK(r.realized_theta.size() == 15);
  for (const auto& m : r.missing_names) MESSAGE(m);
}

TEST_CASE("dropping the positive-count rule only adds single-lift profiles with alpha = delta = 1") {
  EnumerationOptions o;
  o.positive_count_bound = false;
  const auto wide = enumerate_profiles(o);
  CHECK(std::includes(wide.begin(), wide.end(), profiles().begin(), profiles().end()));
  std::size_t extra = 0;
  for (const auto& p : wide) {
    if (std::binary_search(profiles().begin(), profiles().end(), p)) continue;
    ++extra;
    CHECK((p.s_sigma > 0) + (p.s_tausigma > 0) == 1);
    CHECK(p.alpha == 1);
    CHECK(p.delta_pm == 1);
  }
  CHECK(extra > 0);
  // The added profiles stay within s_nor <= 4, so the rule is not what caps s_nor.
  CHECK(bound_report(wide).max_s_nor == 4);
}
