#include "k3lat/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace k3lat::catalog {

namespace {

constexpr std::size_t kU1 = 0, kU2 = 2, kU3 = 4, kE1 = 6, kE2 = 14, kRank = 22;

IntMatrix u_action(UAction a) {
  switch (a) {
    case UAction::Plus:
      return IntMatrix::identity(2);
    case UAction::Minus:
      return -IntMatrix::identity(2);
    case UAction::Swap:
      return IntMatrix{{0, 1}, {1, 0}};
    case UAction::MinusSwap:
      return IntMatrix{{0, -1}, {-1, 0}};
  }
  return {};
}

const char* u_name(UAction a) {
  switch (a) {
    case UAction::Plus:
      return "plus";
    case UAction::Minus:
      return "minus";
    case UAction::Swap:
      return "swap";
    case UAction::MinusSwap:
      return "mswap";
  }
  return "";
}

void put_block(IntMatrix& m, std::size_t row, std::size_t col, const IntMatrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(row + i, col + j) = b(i, j);
}

// Pair action: blocks at offsets p, q of size n; x_p -> A x_q etc. when exchanged.
void put_pair(IntMatrix& m, std::size_t p, std::size_t q, const IntMatrix& a, const IntMatrix& b,
              bool exchange) {
  if (exchange) {
    put_block(m, p, q, a);
    put_block(m, q, p, b);
  } else {
    put_block(m, p, p, a);
    put_block(m, q, q, b);
  }
}

}  // namespace

Lattice hyperbolic_plane() { return Lattice("U", IntMatrix{{0, 1}, {1, 0}}); }

Lattice e8() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  // Bourbaki labels 1..8: chain 1-3-4-5-6-7-8 with 2 attached to 4.
  const std::size_t edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (const auto& e : edges) {
    g(e[0] - 1, e[1] - 1) = 1;
    g(e[1] - 1, e[0] - 1) = 1;
  }
  return Lattice("E8", g);
}

Lattice diagonal_rank_one(long k) {
  return Lattice("<" + std::to_string(k) + ">", IntMatrix{{k}});
}

Lattice k3_lattice() {
  Lattice u = hyperbolic_plane(), e = e8();
  Lattice l = direct_sum({u, u, u, e, e});
  l.name = "K3";
  return l;
}

LatticePtr k3_ptr() {
  static const LatticePtr p = std::make_shared<const Lattice>(k3_lattice());
  return p;
}

Lattice named_lattice(const std::string& key) {
  Lattice l;
  if (key == "U") {
    l = hyperbolic_plane();
  } else if (key == "U(2)") {
    l = rescale(hyperbolic_plane(), 2);
  } else if (key == "E8") {
    l = e8();
  } else if (key == "E8(2)") {
    l = rescale(e8(), 2);
  } else if (key == "A1") {
    l = diagonal_rank_one(-2);
  } else if (key == "K3") {
    l = k3_lattice();
  } else if (key.size() > 2 && key.front() == '<' && key.back() == '>') {
    long k = 0;
    try {
      k = std::stol(key.substr(1, key.size() - 2));
    } catch (const std::exception&) {
      throw InputError("unknown lattice: " + key);
    }
    l = diagonal_rank_one(k);
  } else {
    throw InputError("unknown lattice: " + key);
  }
  l.name = key;
  return l;
}

std::vector<std::string> lattice_names() { return {"U", "U(2)", "E8", "E8(2)", "A1", "K3"}; }

IsometryInvolution tau_reference() {
  IntMatrix m(kRank, kRank);
  put_block(m, kU1, kU1, -IntMatrix::identity(2));
  put_pair(m, kU2, kU3, IntMatrix::identity(2), IntMatrix::identity(2), true);
  put_pair(m, kE1, kE2, IntMatrix::identity(8), IntMatrix::identity(8), true);
  return IsometryInvolution("tau_ref", k3_ptr(), m);
}

IsometryInvolution sigma_reference() {
  BlockSpec s;
  s.u1 = UAction::Swap;
  s.u2 = s.u3 = UAction::Minus;
  s.e8_first = s.e8_second = 1;
  IsometryInvolution sigma = block_involution(s);
  sigma.name = "sigma_ref";
  return sigma;
}

std::string BlockSpec::name() const {
  const auto& e = e8_involutions();
  std::string n = std::string("blk_") + u_name(u1) + "_" + u_name(u2);
  if (u3 != u2) n += std::string("/") + u_name(u3);
  n += exchange_u ? "_x" : "_d";
  n += "_" + e.at(e8_first).name;
  if (e8_second != e8_first) n += "/" + e.at(e8_second).name;
  n += exchange_e8 ? "_x" : "_d";
  return n;
}

const std::vector<IntVec>& e8_roots() {
  static const std::vector<IntVec> roots = [] {
    const IntMatrix g = e8().gram;
    std::set<IntVec> seen;
    std::vector<IntVec> frontier;
    for (std::size_t i = 0; i < 8; ++i) {
      IntVec e(8);
      e[i] = 1;
      seen.insert(e);
      frontier.push_back(e);
    }
    // Closure of the simple roots under simple reflections x -> x + (x.a) a.
    while (!frontier.empty()) {
      std::vector<IntVec> next;
      for (const auto& x : frontier)
        for (std::size_t j = 0; j < 8; ++j) {
          IntVec y = x;
          Int c = (g * x)[j];
          if (c == 0) continue;
          y[j] += c;
          if (seen.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
    return std::vector<IntVec>(seen.begin(), seen.end());
  }();
  return roots;
}

const std::vector<E8Involution>& e8_involutions() {
  static const std::vector<E8Involution> list = [] {
    const Lattice e = e8();
    const auto& roots = e8_roots();
    auto reflection_product = [&](const std::vector<std::size_t>& idx) {
      IntMatrix m = IntMatrix::identity(8);
      for (std::size_t k : idx) {
        const IntVec& r = roots[k];
        IntVec gr = e.gram * r;
        IntMatrix s = IntMatrix::identity(8);
        for (std::size_t i = 0; i < 8; ++i)
          for (std::size_t j = 0; j < 8; ++j) s(i, j) += r[i] * gr[j];
        m = s * m;
      }
      return m;
    };
    auto lp = std::make_shared<const Lattice>(e);
    std::vector<E8Involution> out;
    std::set<InvolutionInvariants> have;
    auto consider = [&](const std::string& name, const IntMatrix& m) {
      IsometryInvolution phi(name, lp, m);
      InvolutionInvariants inv = involution_invariants(phi);
      if (have.insert(inv).second) out.push_back({name, m, inv});
    };
    consider("id", IntMatrix::identity(8));
    consider("neg", -IntMatrix::identity(8));
    // Greedy orthogonal root frames from every starting root, all prefixes.
    for (std::size_t start = 0; start < roots.size(); ++start) {
      std::vector<std::size_t> frame{start};
      for (std::size_t k = 0; k < roots.size() && frame.size() < 8; ++k) {
        bool orth = std::all_of(frame.begin(), frame.end(), [&](std::size_t f) {
          return k != f && e.pair(roots[k], roots[f]) == 0;
        });
        if (orth) frame.push_back(k);
      }
      for (std::size_t len = 1; len <= frame.size(); ++len) {
        std::vector<std::size_t> pre(frame.begin(), frame.begin() + static_cast<std::ptrdiff_t>(len));
        IntMatrix m = reflection_product(pre);
        std::string tag = "r" + std::to_string(start) + "k" + std::to_string(len);
        consider(tag, m);
        consider("m" + tag, -m);
      }
    }
    return out;
  }();
  return list;
}

IsometryInvolution block_involution(const BlockSpec& spec) {
  const auto& e = e8_involutions();
  if (spec.u2 != spec.u3) throw InputError("U pair actions differ, so they do not commute with tau");
  if (spec.e8_first != spec.e8_second)
    throw InputError("E8 pair actions differ, so they do not commute with tau");
  if (spec.e8_first >= e.size()) throw InputError("unknown E8 action index");
  IntMatrix m(kRank, kRank);
  put_block(m, kU1, kU1, u_action(spec.u1));
  put_pair(m, kU2, kU3, u_action(spec.u2), u_action(spec.u3), spec.exchange_u);
  put_pair(m, kE1, kE2, e[spec.e8_first].matrix, e[spec.e8_second].matrix, spec.exchange_e8);
  IsometryInvolution sigma(spec.name(), k3_ptr(), m);
  IsometryInvolution tau = tau_reference();
  if (!(tau.matrix * sigma.matrix == sigma.matrix * tau.matrix))
    throw InputError("block involution does not commute with tau");
  return sigma;
}

std::vector<FamilyMember> block_sigma_family(const std::vector<BlockSpec>& specs) {
  std::vector<FamilyMember> out;
  const IsometryInvolution tau = tau_reference();
  for (const auto& s : specs) {
    FamilyMember f{s, block_involution(s), false};
    IsometryInvolution ts("tau*" + f.sigma.name, f.sigma.lattice, tau.matrix * f.sigma.matrix);
    f.hyperbolic = fixed_lattice_is_hyperbolic(f.sigma) && fixed_lattice_is_hyperbolic(ts);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<BlockSpec> default_family_specs() {
  std::vector<BlockSpec> specs;
  const std::size_t ne = e8_involutions().size();
  for (UAction phi : {UAction::Minus, UAction::MinusSwap})
    for (bool xu : {false, true}) {
      // The U1 action must fix exactly one of the two positive directions of L_tau.
      std::vector<UAction> u1s = xu ? std::vector<UAction>{UAction::Minus, UAction::MinusSwap}
                                    : std::vector<UAction>{UAction::Plus, UAction::Swap};
      for (UAction u1 : u1s)
        for (std::size_t k = 0; k < ne; ++k)
          for (bool xe : {false, true}) {
            BlockSpec s;
            s.u1 = u1;
            s.u2 = s.u3 = phi;
            s.exchange_u = xu;
            s.e8_first = s.e8_second = k;
            s.exchange_e8 = xe;
            specs.push_back(s);
          }
    }
  return specs;
}

std::vector<std::string> involution_names() { return {"tau_ref", "sigma_ref"}; }

IsometryInvolution named_involution(const std::string& name) {
  if (name == "tau_ref") return tau_reference();
  if (name == "sigma_ref") return sigma_reference();
  for (const auto& s : default_family_specs())
    if (s.name() == name) return block_involution(s);
  throw InputError("unknown involution: " + name);
}

}  // namespace k3lat::catalog
