#include "k3lat/enumerate.hpp"

#include <algorithm>
#include <sstream>

namespace k3lat {

std::string InvariantProfile::to_string() const {
  std::ostringstream o;
  o << "theta(" << r_theta << "," << a_theta << "," << delta_theta << ") sigma(" << r_sigma << ","
    << a_sigma << "," << delta_sigma << ") tau_sigma(" << r_tausigma << "," << a_tausigma << ","
    << delta_tausigma << ") h+=" << h_plus << " h-=" << h_minus << " c=" << c << " gamma=" << gamma
    << " alpha=" << alpha << " delta_pm=" << delta_pm << " beta=" << beta << " s(sigma)=" << s_sigma
    << " s(tau_sigma)=" << s_tausigma << " s_nor=" << s_nor << " s_or=" << s_or << " s=" << s
    << " b=" << b;
  return o.str();
}

namespace {

bool valid_involution(int r, int a) {
  return r >= 1 && r <= 21 && a >= 0 && a <= std::min(r, 22 - r) && (r - a) % 2 == 0;
}

long components(int r, int a, int delta) {
  return fixed_set_topology(InvolutionInvariants{static_cast<std::size_t>(r),
                                                 static_cast<std::size_t>(a), delta})
      .components;
}

}  // namespace

std::vector<InvariantProfile> enumerate_partition(const ThetaInvariants& theta,
                                                  const EnumerationOptions& opt) {
  std::vector<InvariantProfile> out;
  const int rt = static_cast<int>(theta.r), at = static_cast<int>(theta.a), dt = theta.delta;
  InvariantProfile p;
  p.r_theta = rt;
  p.a_theta = at;
  p.delta_theta = dt;
  for (int rs = 1; rs <= 21; ++rs) {
    const int rts = 12 + 2 * rt - rs;
    if (rts < 1 || rts > 21) continue;
    for (int as = 0; as <= std::min(rs, 22 - rs); ++as) {
      if (!valid_involution(rs, as)) continue;
      for (int ds = 0; ds <= 1; ++ds)
        // Gamma_pm has dimension a(theta) and lies in H+ ∩ H-.
        for (int hp = at; hp <= rt; ++hp)
          for (int hm = at; hm <= 10 - rt; ++hm) {
            const int alpha = as - hp - hm;
            if (alpha < 0 || alpha > 1) continue;
            if (rs - as < 2 * rt - 2 * hp) continue;
            if (rs + as > 2 * hm + 2 * rt + 2) continue;
            for (int c = at; c <= hm; ++c) {
              const int gamma = hm - c;
              // H- pairs only with H+ / Gamma_pm, so gamma <= h+ - a(theta).
              if (gamma > 2 || gamma > hp - at) continue;
              const int ats = as + 10 + 2 * at - 2 * hp - 2 * c;
              if (!valid_involution(rts, ats)) continue;
              for (int dts = 0; dts <= 1; ++dts) {
                if ((ds == 0 || dts == 0) && (ds + dts) % 2 != dt) continue;
                const long ss = components(rs, as, ds), sts = components(rts, ats, dts);
                const int npos = (ss > 0) + (sts > 0);
                const long sum = ss + sts;
                if (npos > 0 && sum != npos + 1 + rt - at - as + hp + c)
                  throw InconsistencyError("component count identity fails in enumeration");
                for (int dpm = 0; dpm <= 1; ++dpm) {
                  if (ds == 0 && dpm == 1) continue;
                  const int mn = std::min(alpha, dpm);
                  if (opt.positive_count_bound && (npos - mn < 0 || ((npos - mn == 0) != (npos == 0))))
                    continue;
                  const bool case_a = alpha == 1 && dpm == 0;
                  std::vector<int> betas = case_a ? std::vector<int>{0}
                                           : npos == 2 ? std::vector<int>{1}
                                                       : std::vector<int>{0, 1};
                  for (int beta : betas) {
                    const int b = rt - at + std::max(1 - alpha, dpm) + beta;
                    const long sum_used = npos == 0 ? 1 + rt - at - as + hp + c : sum;
                    if (b != sum_used - npos + mn + gamma + beta)
                      throw InconsistencyError("b formulas disagree in enumeration");
                    p.r_sigma = rs;
                    p.a_sigma = as;
                    p.delta_sigma = ds;
                    p.r_tausigma = rts;
                    p.a_tausigma = ats;
                    p.delta_tausigma = dts;
                    p.h_plus = hp;
                    p.h_minus = hm;
                    p.c = c;
                    p.gamma = gamma;
                    p.alpha = alpha;
                    p.delta_pm = dpm;
                    p.beta = beta;
                    p.s_sigma = static_cast<int>(ss);
                    p.s_tausigma = static_cast<int>(sts);
                    p.b = b;
                    if (npos == 0) {
                      p.s_nor = p.s_or = p.s = 0;
                      out.push_back(p);
                      continue;
                    }
                    long pred = -1;
                    if (npos == 2) pred = alpha == 0 ? 1 + gamma : (dpm == 0 ? gamma : 2 + gamma);
                    for (auto [sn, so] : component_splits(ss, sts)) {
                      const long s = sn + so;
                      if (b < 2 * s - 2) continue;
                      if (npos == 2 && (sn != pred || b != 2 * s - 2)) continue;
                      p.s_nor = static_cast<int>(sn);
                      p.s_or = static_cast<int>(so);
                      p.s = static_cast<int>(s);
                      out.push_back(p);
                    }
                  }
                }
              }
            }
          }
    }
  }
  return out;
}

std::vector<InvariantProfile> enumerate_profiles(const EnumerationOptions& opt) {
  std::vector<InvariantProfile> all;
  for (const auto& th : admissible_theta_list()) {
    auto part = enumerate_partition(th, opt);
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

bool vanishing_b_consistent(const InvariantProfile& p) {
  if (p.empty_real_locus()) return true;
  const bool lhs = p.b == 0;
  const bool rhs = p.s_sigma + p.s_tausigma == 1 && p.r_theta == p.a_theta;
  if (lhs != rhs) return false;
  if (lhs) {
    const bool one_empty = (p.s_sigma == 0) != (p.s_tausigma == 0);
    return p.alpha == 1 && p.gamma == 0 && one_empty && p.s == 1 && p.s_nor == 1;
  }
  return true;
}

BoundReport bound_report(const std::vector<InvariantProfile>& profiles) {
  BoundReport r;
  r.profile_count = profiles.size();
  for (const auto& p : profiles) {
    if (p.empty_real_locus()) continue;
    if (2 * p.s > 2 + p.r_theta - p.a_theta + std::max(1 - p.alpha, p.delta_pm) + p.beta)
      r.intermediate_bound_holds = false;
    r.max_s = std::max(r.max_s, p.s);
    r.max_s_nor = std::max(r.max_s_nor, p.s_nor);
  }
  for (const auto& p : profiles) {
    if (p.empty_real_locus()) continue;
    if (p.s == r.max_s) r.s_witnesses.push_back(p);
    if (p.s_nor == r.max_s_nor) r.s_nor_witnesses.push_back(p);
  }
  return r;
}

std::vector<InvariantProfile> profiles_of(const EnriquesActionTriple& t, const EnriquesAnalysis& a) {
  InvariantProfile p;
  p.r_theta = static_cast<int>(a.theta.r);
  p.a_theta = static_cast<int>(a.theta.a);
  p.delta_theta = a.theta.delta;
  p.r_sigma = static_cast<int>(t.inv_sigma.r);
  p.a_sigma = static_cast<int>(t.inv_sigma.a);
  p.delta_sigma = t.inv_sigma.delta;
  p.r_tausigma = static_cast<int>(t.inv_tau_sigma.r);
  p.a_tausigma = static_cast<int>(t.inv_tau_sigma.a);
  p.delta_tausigma = t.inv_tau_sigma.delta;
  p.h_plus = static_cast<int>(a.glue.h_plus.dim());
  p.h_minus = static_cast<int>(a.glue.h_minus.dim());
  p.c = static_cast<int>(a.glue.c);
  p.gamma = static_cast<int>(a.derived.gamma);
  p.alpha = a.derived.alpha;
  p.delta_pm = a.derived.delta();
  p.s_sigma = static_cast<int>(a.counts.s_sigma);
  p.s_tausigma = static_cast<int>(a.counts.s_tau_sigma);
  std::vector<InvariantProfile> out;
  if (a.brauer.empty_real_locus) {
    for (const auto& b : a.b_values) {
      p.beta = b.beta;
      p.b = static_cast<int>(b.unified);
      out.push_back(p);
    }
    return out;
  }
  for (const auto& o : a.brauer.options) {
    p.beta = o.beta;
    p.b = static_cast<int>(o.b);
    p.s_nor = static_cast<int>(o.s_nor);
    p.s_or = static_cast<int>(o.s_or);
    p.s = static_cast<int>(o.s);
    out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CrossCheckReport catalog_cross_check(const std::vector<NamedAnalysis>& analyses,
                                     const std::vector<InvariantProfile>& profiles) {
  CrossCheckReport r;
  for (const auto& na : analyses) {
    ++r.triples;
    r.realized_theta.insert(na.analysis->theta);
    if (!is_admissible_theta(na.analysis->theta)) r.all_theta_admissible = false;
    for (const auto& p : profiles_of(*na.triple, *na.analysis)) {
      ++r.profiles;
      if (!std::binary_search(profiles.begin(), profiles.end(), p)) {
        ++r.missing;
        r.missing_names.push_back(na.name + ": " + p.to_string());
      }
    }
  }
  return r;
}

}  // namespace k3lat
