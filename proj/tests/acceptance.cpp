// Acceptance suite: one line per criterion. Criteria listed in kKnownFailures
// are expected to fail (see README); the exit status is nonzero when any
// other criterion fails or when a known failure starts passing.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "support.hpp"

using namespace k3lat;
using Clock = std::chrono::steady_clock;

namespace {

const std::set<int> kKnownFailures = {3};

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string cli_path;

std::string run(const std::string& args) {
  std::string out;
  FILE* p = popen((cli_path + " " + args + " 2>&1").c_str(), "r");
  if (!p) return out;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), p)) out += buf.data();
  pclose(p);
  return out;
}

void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  const auto tau = catalog::tau_reference();
  const auto inv = involution_invariants(tau);
  const auto top = fixed_set_topology(inv);
  const double dt = seconds_since(t0);
  o.need(inv == InvolutionInvariants{10, 10, 0}, "tau invariants (10,10,0)");
  o.need(top.kind == FixedSetKind::Empty && top.components == 0, "empty fixed set");
  o.need(dt < 1.0, "runtime < 1 s");
  o.note << " (r,a,delta)=(" << inv.r << "," << inv.a << "," << inv.delta << "), " << dt << " s";
}

void criterion2(Outcome& o) {
  const auto t0 = Clock::now();
  const auto tau = catalog::tau_reference();
  const auto sigma = catalog::sigma_reference();
  const auto t = validate_triple(catalog::k3_ptr(), tau, sigma);
  const auto a = analyze(t);
  const double dt = seconds_since(t0);

  // Invariants of sigma and tau*sigma directly from eigenlattices and via the
  // rank and discriminant identities through theta and the glue data.
  const auto s_direct = involution_invariants(sigma);
  const auto ts_direct = involution_invariants(IsometryInvolution("ts", t.lattice, tau.matrix * sigma.matrix));
  o.need(s_direct == InvolutionInvariants{1, 1, 1} && t.inv_sigma == s_direct, "sigma (1,1,1)");
  o.need(ts_direct == InvolutionInvariants{11, 11, 1} && t.inv_tau_sigma == ts_direct, "tau sigma (11,11,1)");
  const long rt = static_cast<long>(a.theta.r), at = static_cast<long>(a.theta.a);
  o.need(static_cast<long>(ts_direct.r) == 12 + 2 * rt - static_cast<long>(s_direct.r), "r(tau sigma) from rank identity");
  o.need(static_cast<long>(ts_direct.a) ==
             static_cast<long>(s_direct.a) + 10 + 2 * at - 2 * static_cast<long>(a.glue.h_plus.dim()) -
                 2 * static_cast<long>(a.glue.c),
         "a(tau sigma) from discriminant identity");
  o.need(a.theta == InvolutionInvariants{0, 0, 0}, "theta (0,0,0)");
  o.need(a.glue.h_plus.dim() == 0 && a.glue.h_minus.dim() == 0 && a.glue.c == 0, "h+ = h- = c = 0");
  o.need(a.derived.alpha == 1 &&
             static_cast<std::size_t>(a.derived.alpha) ==
                 s_direct.a - a.glue.h_plus.dim() - a.glue.h_minus.dim(),
         "alpha = 1 from a(sigma) - h+ - h-");
  o.need(a.derived.delta_plus == 1 && a.derived.delta_minus == 1 && a.derived.delta_via_gamma == 1 &&
             a.derived.delta_via_v_sigma == 1,
         "delta_pm = 1 on three routes");
  o.need(a.derived.gamma == 0 && a.derived.gamma == a.glue.h_minus.dim() - a.glue.c, "gamma = 0");
  o.need(a.counts.s_sigma == 1 && a.counts.s_tau_sigma == 1, "s(sigma) = s(tau sigma) = 1");
  o.need(a.counts.sum == a.counts.sum_formula, "component sum from topology and from invariants");
  o.need(a.cohomology.beta_choices == std::vector<int>{1}, "beta forced to 1");
  bool b_ok = a.b_values.size() == 1;
  for (const auto& b : a.b_values) b_ok = b_ok && b.unified == 2 && b.branch == 2 && b.via_counts == 2;
  o.need(b_ok, "b = 2 on three formulas");
  o.need(a.brauer.options.size() == 1, "single real-locus configuration");
  if (!a.brauer.options.empty()) {
    const auto& op = a.brauer.options.front();
    o.need(op.s == 2 && op.s_nor == 2 && op.s_or == 0, "s = s_nor = 2, s_or = 0");
    o.need(a.s_nor_predicted && *a.s_nor_predicted == op.s_nor, "s_nor matches prediction");
    o.need(op.epsilon == 1 && op.b == 2 * op.s - 2, "epsilon = 1 forced by b = 2s - 2");
    o.need(op.br == 3 && op.br == op.b + op.epsilon, "dim Br = 3");
  }
  o.need(a.checks.all_ok(), "all internal cross-checks");
  o.need(dt < 5.0, "runtime < 5 s");
  o.note << " b=2 br=3 s=2 s_nor=2, " << dt << " s";
}

void criterion3(Outcome& o) {
  const auto& set = k3test::catalog_set();
  std::size_t n = 0, rank_ok = 0, disc_ok = 0, parity_ok = 0;
  for (const auto& na : set.named) {
    ++n;
    const auto cl = companion_identities(*na.triple, na.analysis->theta, na.analysis->glue);
    for (const auto& c : cl.checks) {
      if (c.name.rfind("rank sum", 0) == 0) rank_ok += c.ok;
      if (c.name.rfind("discriminant difference", 0) == 0) disc_ok += c.ok;
      if (c.name.rfind("parity", 0) == 0) parity_ok += c.ok;
    }
  }
  o.need(n >= 20, ">= 20 triples");
  o.need(rank_ok == n, "rank identity");
  o.need(disc_ok == n, "discriminant identity");
  o.need(parity_ok == n, "parity identity");

  // Perturbations that break the isometry property are rejected when the
  // involution is constructed, before any identity is evaluated.
  const IntMatrix m = catalog::sigma_reference().matrix;
  std::size_t rejected = 0, tried = 0;
  for (std::size_t k = 0; k < 40; ++k) {
    IntMatrix p = m;
    p((k * 7) % 22, (k * 13 + 3) % 22) += 1;
    ++tried;
    try {
      IsometryInvolution bad("perturbed", catalog::k3_ptr(), p);
      validate_triple(catalog::k3_ptr(), catalog::tau_reference(), bad);
    } catch (const InputError&) {
      ++rejected;
    }
  }
  o.need(rejected == tried, "perturbations rejected");
  o.note << " triples=" << n << " rank " << rank_ok << "/" << n << ", discriminant " << disc_ok << "/" << n
         << ", parity " << parity_ok << "/" << n << ", perturbations rejected " << rejected << "/" << tried;
}

void criterion4(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t n = 0;
  for (const auto& d : k3test::three_summand_decompositions()) {
    const auto r = k3test::complement_identity(d);
    o.need(r.glue_order <= 4096, d.name + " glue order <= 2^12");
    o.need(r.sets_equal, d.name + " complement = Gamma(S2,S3) + Gamma(S1,S3)");
    o.need(r.counting, d.name + " |A_S2| = |Gamma12||Gamma23|");
    ++n;
    o.note << " " << d.name << ":" << r.glue_order;
  }
  const double dt = seconds_since(t0);
  o.need(n >= 5, ">= 5 decompositions");
  o.need(dt < 30.0, "runtime < 30 s");
  o.note << "; " << n << " decompositions, " << dt << " s";
}

void criterion5(Outcome& o) {
  std::mt19937 rng(20240601);
  int done = 0, compared = 0;
  while (done < 200) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 5);
    const bool even = rng() % 2 == 0;
    const Lattice l("rand", k3test::random_symmetric(rng, n, -5, 5, even));
    if (!l.is_nondegenerate()) continue;
    ++done;
    const FiniteQuadraticModule a = discriminant_form(l);
    o.need(a.order() == abs(l.det()), "|A| = |det|");
    for (const auto& x : a.gens)
      for (const auto& y : a.gens) {
        o.need(a.b(x, y) == a.b(y, x), "b symmetric");
        if (!a.even) continue;
        RatVec s(x.size()), neg(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          s[i] = x[i] + y[i];
          neg[i] = -x[i];
        }
        o.need(a.q(reduce_mod1(neg)) == a.q(x), "q(-x) = q(x)");
        o.need(reduce_mod(a.q(reduce_mod1(s)) - a.q(x) - a.q(y), 2) == reduce_mod(2 * a.b(x, y), 2),
               "q(x+y) - q(x) - q(y) = 2b(x,y)");
        o.need(reduce_mod(a.q(x), 1) == a.b(x, x), "q = b(x,x) mod 1");
      }
    if (abs(l.det()) <= 64) {
      ++compared;
      const auto oracle = k3test::dual_coset_oracle(l);
      const auto mine = k3test::module_statistics(a);
      o.need(oracle.order == mine.order && oracle.order_histogram == mine.order_histogram &&
                 oracle.b_self == mine.b_self && oracle.q_values == mine.q_values,
             "dual-coset comparison");
    }
  }
  o.note << " " << done << " lattices, " << compared << " brute-force comparisons";
}

void criterion6(Outcome& o) {
  const auto& a = k3test::catalog_set().analyses.front();
  const auto& f = a.f_class;
  o.need(f.f_value == 1, "f^2/2 = 1 mod 2");
  o.need(f.g_values.size() == 2 && f.g_values[0] == 0 && f.g_values[1] == 0, "complementary classes have value 0");
  o.need(f.sigma_invariant, "f sigma-invariant");
  o.need(f.tau_image.size() == 10, "image of L^tau has dimension 10");
  o.note << " f value " << f.f_value << ", others " << f.g_values.at(0) << "," << f.g_values.at(1);
}

void criterion7(Outcome& o) {
  std::size_t n = 0, vanish = 0;
  for (const auto& na : k3test::catalog_set().named) {
    const auto& c = na.analysis->cohomology;
    o.need(c.f_vanishes == c.f_vanishes_predicted, na.name + " direct vs prediction");
    o.need(c.f_vanishes == c.f_vanishes_on_images, na.name + " direct vs images");
    ++n;
    vanish += c.f_vanishes;
  }
  o.note << " " << n << " triples, f vanishes on " << vanish;
}

void criterion8(Outcome& o) {
  std::size_t n = 0;
  for (const auto& na : k3test::catalog_set().named) {
    const auto& a = *na.analysis;
    const auto& t = *na.triple;
    const long closed_anti = 12 - static_cast<long>(a.theta.a) - static_cast<long>(t.inv_sigma.a) +
                             static_cast<long>(a.glue.h_plus.dim()) + static_cast<long>(a.glue.h_minus.dim());
    const long closed_tau = 10 - static_cast<long>(a.theta.a);
    o.need(a.mod2.anti_tau_direct == closed_anti, na.name + " L_tau/2 fixed dimension");
    o.need(a.mod2.tau_direct == closed_tau, na.name + " L^tau/2 fixed dimension");
    o.need(a.mod2.anti_tau_image == closed_anti && a.mod2.tau_image == closed_tau, na.name + " image route");
    ++n;
  }
  o.note << " " << n << " triples";
}

void criterion9(Outcome& o) {
  const auto t0 = Clock::now();
  const auto profiles = enumerate_profiles();
  const auto b = bound_report(profiles);
  const double dt = seconds_since(t0);
  o.need(b.max_s == 6, "max s = 6");
  o.need(b.max_s_nor == 4, "max s_nor = 4");
  o.need(!b.s_witnesses.empty() && !b.s_nor_witnesses.empty(), "witnesses");
  o.need(b.intermediate_bound_holds, "intermediate inequality on every profile");
  bool theta800 = false;
  for (const auto& w : b.s_witnesses) theta800 = theta800 || (w.r_theta == 8 && w.a_theta == 0);
  o.need(theta800, "an s = 6 witness with theta (8,0,0)");
  o.need(dt < 60.0, "runtime < 60 s");
  if (!cli_path.empty()) {
    for (const auto& [flag, want] : {std::pair{"--max-s", "6\n"}, std::pair{"--max-snor", "4\n"}}) {
      const auto c0 = Clock::now();
      o.need(run(std::string("enumerate ") + flag) == want, std::string("CLI ") + flag);
      o.need(seconds_since(c0) < 60.0, std::string("CLI ") + flag + " runtime < 60 s");
    }
  }
  o.note << " " << b.profile_count << " profiles, max s " << b.max_s << " (" << b.s_witnesses.size()
         << " witnesses), max s_nor " << b.max_s_nor << " (" << b.s_nor_witnesses.size() << " witnesses), "
         << dt << " s";
}

void criterion10(Outcome& o) {
  std::set<ThetaInvariants> accepted;
  for (std::size_t r = 0; r <= 10; ++r)
    for (std::size_t a = 0; a <= 10; ++a)
      for (int d : {0, 1})
        if (is_admissible_theta({r, a, d})) accepted.insert({r, a, d});
  const auto& list = admissible_theta_list();
  o.need(accepted.size() == 16, "predicate accepts 16 triples");
  o.need(accepted == std::set<ThetaInvariants>(list.begin(), list.end()), "predicate matches the list");
  std::set<ThetaInvariants> realized;
  for (const auto& na : k3test::catalog_set().named) {
    o.need(accepted.count(na.analysis->theta) == 1, na.name + " theta admissible");
    realized.insert(na.analysis->theta);
  }
  o.note << " realized " << realized.size() << " of 16 by the catalog";
}

void criterion11(Outcome& o) {
  const auto profiles = enumerate_profiles();
  std::size_t checked = 0, witnesses = 0;
  for (const auto& p : profiles) {
    if (p.empty_real_locus()) continue;
    ++checked;
    const bool lhs = p.b == 0;
    const bool rhs = p.s_sigma + p.s_tausigma == 1 && p.r_theta == p.a_theta;
    o.need(lhs == rhs, "biconditional on " + p.to_string());
    if (lhs) {
      o.need(p.alpha == 1 && p.gamma == 0 && p.s == 1 && p.s_nor == 1, "consequences on " + p.to_string());
      ++witnesses;
    }
  }
  o.need(witnesses > 0, "a b = 0 witness profile");
  std::size_t triples = 0;
  for (const auto& na : k3test::catalog_set().named) {
    const auto& a = *na.analysis;
    if (a.brauer.empty_real_locus) continue;
    ++triples;
    for (const auto& b : a.b_values) {
      const bool lhs = b.unified == 0;
      const bool rhs = a.counts.sum == 1 && a.theta.r == a.theta.a;
      o.need(lhs == rhs, na.name + " biconditional");
    }
    for (const auto& c : a.checks.checks)
      if (c.name.rfind("b = 0 iff", 0) == 0) o.need(c.ok, na.name + " " + c.name);
  }
  o.note << " " << checked << " profiles, " << witnesses << " b = 0 witnesses, " << triples << " triples";
}

void criterion12(Outcome& o) {
  std::size_t n = 0, estimates = 0;
  for (const auto& na : k3test::catalog_set().named) {
    const auto& a = *na.analysis;
    for (const auto& b : a.b_values)
      o.need(b.unified == b.branch && b.unified == b.via_counts,
             na.name + " b formulas (beta = " + std::to_string(b.beta) + ")");
    for (const auto& e : a.brauer.options) {
      ++estimates;
      o.need(e.b >= 2 * e.s - 2, na.name + " b >= 2s - 2");
      o.need(e.br >= e.s, na.name + " br >= s");
    }
    ++n;
  }
  o.note << " " << n << " triples, " << estimates << " estimates";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3},   {4, criterion4},   {5, criterion5},   {6, criterion6},
      {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}, {11, criterion11}, {12, criterion12}};
  int unexpected = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " [exception: " << e.what() << "]";
    }
    const bool known = kKnownFailures.count(id) > 0;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL")
              << (known ? (o.pass ? " (known failure now passes)" : " (known failure)") : "") << " --"
              << o.note.str() << "\n";
    if (o.pass == known) ++unexpected;
  }
  std::cout << (unexpected ? "unexpected results: " + std::to_string(unexpected) : "all results as expected") << "\n";
  return unexpected ? 1 : 0;
}
