#include "k3lat/io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "k3lat/catalog.hpp"

namespace k3lat::io {

using json = nlohmann::ordered_json;

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    out.push_back({n, std::move(tok)});
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

Int parse_int(const std::string& s, std::size_t line) {
  std::string t = s.size() > 1 && s[0] == '+' ? s.substr(1) : s;
  Int v;
  const bool digits = !t.empty() && t.find_first_not_of("-0123456789") == std::string::npos &&
                      t.find('-', 1) == std::string::npos && t != "-";
  if (!digits || v.set_str(t, 10) != 0) fail(line, "not an integer: " + s);
  return v;
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}
  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next(const std::string& what) {
    if (done()) {
      const std::size_t last = lines_.empty() ? 0 : lines_.back().number;
      fail(last, "unexpected end of input, expected " + what);
    }
    return lines_[pos_++];
  }

  IntVec row(std::size_t expected) {
    const Line& l = next("a matrix row");
    if (expected != 0 && l.tokens.size() != expected)
      fail(l.number, "expected " + std::to_string(expected) + " integers, got " +
                         std::to_string(l.tokens.size()));
    IntVec r;
    for (const auto& t : l.tokens) r.push_back(parse_int(t, l.number));
    return r;
  }

  IntMatrix matrix(std::size_t n) {
    std::vector<IntVec> rows;
    std::size_t width = n;
    for (std::size_t i = 0; width == 0 || i < width; ++i) {
      rows.push_back(row(width));
      if (width == 0) width = rows.back().size();
    }
    return IntMatrix::from_rows(rows, width);
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

void expect(const Line& l, const std::string& keyword, std::size_t count) {
  if (l.tokens[0] != keyword || l.tokens.size() != count)
    fail(l.number, "expected '" + keyword + "' line");
}

json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(int_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

std::string bits(const F2Vec& v) {
  std::string s;
  for (auto b : v) s += b ? '1' : '0';
  return s;
}

json triple_json(const InvolutionInvariants& i) {
  return json::array({i.r, i.a, i.delta});
}

const char* kind_name(FixedSetKind k) {
  switch (k) {
    case FixedSetKind::Empty:
      return "empty";
    case FixedSetKind::TwoTori:
      return "two tori";
    case FixedSetKind::Generic:
      return "genus g surface plus k spheres";
  }
  return "";
}

json topology_json(const FixedSetTopology& t) {
  return {{"kind", kind_name(t.kind)},
          {"genus", t.genus},
          {"spheres", t.spheres},
          {"components", t.components},
          {"euler_characteristic", t.euler_characteristic()}};
}

json signature_json(const Signature& s) {
  return json::array({s.n_plus, s.n_minus, s.n_zero});
}

bool k3_like(const Lattice& l) {
  return l.rank() == 22 && l.is_even() && l.is_unimodular() &&
         l.signature() == Signature{3, 19, 0};
}

}  // namespace

std::string rat_str(const Rat& x) {
  Rat y = x;
  y.canonicalize();
  return y.get_str();
}

Document parse_document(const std::string& text) {
  Document d;
  Reader r(tokenize(text));
  while (!r.done()) {
    const Line head = r.next("a block");
    const std::string& kw = head.tokens[0];
    if (kw == "lattice") {
      if (head.tokens.size() != 2) fail(head.number, "expected 'lattice <name>'");
      const Line rk = r.next("'rank <N>'");
      expect(rk, "rank", 2);
      const Int n = parse_int(rk.tokens[1], rk.number);
      if (n < 0 || !n.fits_slong_p() || n > 4096) fail(rk.number, "invalid rank");
      expect(r.next("'gram'"), "gram", 1);
      const std::size_t N = n.get_ui();
      IntMatrix g = N == 0 ? IntMatrix(0, 0) : r.matrix(N);
      try {
        d.lattices.emplace_back(head.tokens[1], g);
      } catch (const InputError& e) {
        fail(head.number, std::string(e.what()) + " in lattice " + head.tokens[1]);
      }
    } else if (kw == "involution") {
      if (head.tokens.size() != 4 || head.tokens[2] != "on")
        fail(head.number, "expected 'involution <name> on <lattice-name>'");
      expect(r.next("'matrix'"), "matrix", 1);
      d.involutions.push_back({head.tokens[1], head.tokens[3], r.matrix(0)});
    } else if (kw == "triple") {
      if (head.tokens.size() != 4) fail(head.number, "expected 'triple <lattice> <tau> <sigma>'");
      if (d.triple) fail(head.number, "more than one triple line");
      d.triple = TripleLine{head.tokens[1], head.tokens[2], head.tokens[3]};
    } else {
      fail(head.number, "unknown block '" + kw + "'");
    }
  }
  return d;
}

std::string format_lattice(const Lattice& l) {
  std::ostringstream o;
  o << "lattice " << l.name << "\nrank " << l.rank() << "\ngram\n";
  for (std::size_t i = 0; i < l.rank(); ++i) {
    for (std::size_t j = 0; j < l.rank(); ++j) o << (j ? " " : "") << l.gram(i, j).get_str();
    o << "\n";
  }
  return o.str();
}

std::string format_involution(const InvolutionBlock& b) {
  std::ostringstream o;
  o << "involution " << b.name << " on " << b.lattice << "\nmatrix\n";
  for (std::size_t i = 0; i < b.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < b.matrix.cols(); ++j)
      o << (j ? " " : "") << b.matrix(i, j).get_str();
    o << "\n";
  }
  return o.str();
}

std::string format_document(const Document& d) {
  std::vector<std::string> blocks;
  for (const auto& l : d.lattices) blocks.push_back(format_lattice(l));
  for (const auto& b : d.involutions) blocks.push_back(format_involution(b));
  if (d.triple)
    blocks.push_back("triple " + d.triple->lattice + " " + d.triple->tau + " " + d.triple->sigma +
                     "\n");
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? "\n" : "") + blocks[i];
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

json lattice_to_json(const Lattice& l) {
  return {{"lattice", l.name}, {"rank", l.rank()}, {"gram", matrix_json(l.gram)}};
}

Lattice lattice_from_json(const nlohmann::json& j) {
  try {
    const std::string name = j.at("lattice").get<std::string>();
    const std::size_t n = j.at("rank").get<std::size_t>();
    const json& g = j.at("gram");
    if (!g.is_array() || g.size() != n) throw InputError("gram must have " + std::to_string(n) + " rows");
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!g[i].is_array() || g[i].size() != n)
        throw InputError("gram row " + std::to_string(i + 1) + " must have " + std::to_string(n) +
                         " entries");
      for (std::size_t k = 0; k < n; ++k) {
        const json& e = g[i][k];
        if (e.is_number_integer()) m(i, k) = Int(std::to_string(e.get<long long>()));
        else if (e.is_string()) m(i, k) = parse_int(e.get<std::string>(), 0);
        else throw InputError("gram entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ") is not an integer");
      }
    }
    return Lattice(name, m);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed lattice JSON: ") + e.what());
  }
}

Lattice load_lattice(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return lattice_from_json(j);
  }
  Document d = parse_document(text);
  if (d.lattices.size() != 1) throw InputError("expected exactly one lattice block");
  return d.lattices.front();
}

LatticePtr resolve_lattice(const Document& d, const std::string& name) {
  for (const auto& l : d.lattices)
    if (l.name == name) return std::make_shared<const Lattice>(l);
  if (name == "K3") return catalog::k3_ptr();
  return std::make_shared<const Lattice>(catalog::named_lattice(name));
}

namespace {

IsometryInvolution involution_on(const Document& d, const std::string& name, const LatticePtr& lat,
                                 const std::string& lattice_name) {
  for (const auto& b : d.involutions)
    if (b.name == name) {
      if (b.lattice != lattice_name)
        throw InputError("involution " + name + " acts on " + b.lattice + ", not " + lattice_name);
      return IsometryInvolution(name, lat, b.matrix);
    }
  IsometryInvolution c = catalog::named_involution(name);
  if (lattice_name != "K3" && !(lat->gram == c.lattice->gram))
    throw InputError("catalog involution " + name + " acts on K3, not " + lattice_name);
  return IsometryInvolution(name, lat, c.matrix);
}

}  // namespace

IsometryInvolution resolve_involution(const Document& d, const std::string& name) {
  for (const auto& b : d.involutions)
    if (b.name == name) return involution_on(d, name, resolve_lattice(d, b.lattice), b.lattice);
  return catalog::named_involution(name);
}

std::optional<IsometryInvolution> first_involution(const Document& d) {
  if (d.involutions.empty()) return std::nullopt;
  return resolve_involution(d, d.involutions.front().name);
}

EnriquesActionTriple resolve_triple(const Document& d) {
  if (!d.triple) throw InputError("no 'triple' line");
  const LatticePtr lat = resolve_lattice(d, d.triple->lattice);
  return validate_triple(lat, involution_on(d, d.triple->tau, lat, d.triple->lattice),
                         involution_on(d, d.triple->sigma, lat, d.triple->lattice));
}

std::vector<std::string> catalog_triple_names() {
  std::vector<std::string> out{"reference"};
  for (const auto& m : catalog::block_sigma_family(catalog::default_family_specs()))
    if (m.hyperbolic) out.push_back("enriques_" + m.sigma.name);
  return out;
}

Document catalog_triple(const std::string& name) {
  IsometryInvolution sigma;
  if (name == "reference") {
    sigma = catalog::sigma_reference();
  } else if (name.rfind("enriques_", 0) == 0) {
    sigma = catalog::named_involution(name.substr(9));
  } else {
    throw InputError("unknown triple: " + name);
  }
  const IsometryInvolution tau = catalog::tau_reference();
  Document d;
  d.lattices.push_back(catalog::k3_lattice());
  d.involutions.push_back({tau.name, "K3", tau.matrix});
  d.involutions.push_back({sigma.name, "K3", sigma.matrix});
  d.triple = TripleLine{"K3", tau.name, sigma.name};
  return d;
}

Document catalog_fixture(const std::string& name) {
  const auto lats = catalog::lattice_names();
  if (std::find(lats.begin(), lats.end(), name) != lats.end() ||
      (name.size() > 2 && name.front() == '<')) {
    Document d;
    d.lattices.push_back(catalog::named_lattice(name));
    return d;
  }
  if (name == "reference" || name.rfind("enriques_", 0) == 0) return catalog_triple(name);
  IsometryInvolution phi = catalog::named_involution(name);
  Document d;
  d.lattices.push_back(catalog::k3_lattice());
  d.involutions.push_back({phi.name, "K3", phi.matrix});
  return d;
}

json lattice_report(const Lattice& l) {
  json j;
  j["lattice"] = l.name;
  j["rank"] = l.rank();
  j["determinant"] = int_json(l.det());
  j["signature"] = signature_json(l.signature());
  j["even"] = l.is_even();
  j["unimodular"] = l.is_unimodular();
  if (!l.is_nondegenerate()) {
    j["discriminant"] = nullptr;
    return j;
  }
  const FiniteQuadraticModule a = discriminant_form(l);
  json disc;
  disc["order"] = int_json(a.order());
  json orders = json::array();
  for (const auto& o : a.orders) orders.push_back(int_json(o));
  disc["invariant_factors"] = orders;
  json q = json::array(), b = json::array();
  for (std::size_t i = 0; i < a.gens.size(); ++i) {
    q.push_back(a.even ? json(rat_str(a.q(a.gens[i]))) : json(nullptr));
    json row = json::array();
    for (std::size_t k = 0; k < a.gens.size(); ++k) row.push_back(rat_str(a.b(a.gens[i], a.gens[k])));
    b.push_back(row);
  }
  disc["q_on_generators"] = q;
  disc["b_on_generators"] = b;
  disc["two_elementary"] = a.is_two_elementary();
  if (a.even && a.is_two_elementary()) {
    const InvolutionInvariants inv = invariants_of_fixed_lattice(l);
    disc["a"] = inv.a;
    disc["delta"] = inv.delta;
  }
  j["discriminant"] = disc;
  return j;
}

json involution_report(const IsometryInvolution& phi) {
  json j;
  j["involution"] = phi.name;
  j["lattice"] = phi.lattice->name;
  const InvolutionInvariants inv = involution_invariants(phi);
  j["r"] = inv.r;
  j["a"] = inv.a;
  j["delta"] = inv.delta;
  auto [plus, minus] = eigenlattices(phi);
  j["fixed_signature"] = signature_json(signature_exact(plus.gram));
  j["anti_fixed_signature"] = signature_json(signature_exact(minus.gram));
  j["fixed_hyperbolic"] = fixed_lattice_is_hyperbolic(phi);
  if (k3_like(*phi.lattice)) j["fixed_set"] = topology_json(fixed_set_topology(inv));
  return j;
}

json analysis_report(const EnriquesActionTriple& t, const EnriquesAnalysis& a) {
  json j;
  j["input"] = {{"lattice", t.lattice->name},
                {"rank", t.lattice->rank()},
                {"tau", t.tau.name},
                {"sigma", t.sigma.name}};
  j["theta"] = triple_json(a.theta);
  j["sigma"] = triple_json(t.inv_sigma);
  j["tau_sigma"] = triple_json(t.inv_tau_sigma);
  j["fixed_set"] = {{"sigma", topology_json(a.counts.top_sigma)},
                    {"tau_sigma", topology_json(a.counts.top_tau_sigma)}};
  const auto& g = a.glue;
  const auto& d = a.derived;
  j["glue"] = {{"h_plus", g.h_plus.dim()},
               {"h_minus", g.h_minus.dim()},
               {"gamma_pm", g.gamma_pm.dim()},
               {"c", g.c},
               {"gamma", d.gamma},
               {"alpha", d.alpha},
               {"delta_plus", d.delta_plus},
               {"delta_minus", d.delta_minus},
               {"delta_via_gamma", d.delta_via_gamma},
               {"delta_via_v_sigma", d.delta_via_v_sigma},
               {"delta_pm", d.delta()},
               {"v_q", bits(d.v_q)}};
  j["components"] = {{"s_sigma", a.counts.s_sigma},
                     {"s_tau_sigma", a.counts.s_tau_sigma},
                     {"sum", a.counts.sum},
                     {"sum_formula", a.counts.sum_formula},
                     {"positive", a.counts.positive()}};
  j["mod2"] = {{"anti_tau_fixed", a.mod2.anti_tau_direct},
               {"anti_tau_fixed_image", a.mod2.anti_tau_image},
               {"anti_tau_fixed_formula", a.mod2.anti_tau_formula},
               {"tau_fixed", a.mod2.tau_direct},
               {"tau_fixed_image", a.mod2.tau_image},
               {"tau_fixed_formula", a.mod2.tau_formula}};
  j["f_class"] = {{"f", bits(a.f_class.f)},
                  {"f_value", a.f_class.f_value},
                  {"other_values", a.f_class.g_values},
                  {"sigma_invariant", a.f_class.sigma_invariant}};
  const auto& cc = a.cohomology;
  j["cohomology"] = {{"case", cc.case_a ? "A" : "B"},
                     {"f_vanishes", cc.f_vanishes},
                     {"f_vanishes_on_images", cc.f_vanishes_on_images},
                     {"f_vanishes_predicted", cc.f_vanishes_predicted},
                     {"quotient_fixed", cc.quotient_fixed_direct},
                     {"quotient_fixed_formula", cc.quotient_fixed_formula},
                     {"integral_dim", cc.integral_dim},
                     {"beta_choices", cc.beta_choices}};
  json bs = json::array();
  for (const auto& b : a.b_values)
    bs.push_back({{"beta", b.beta},
                  {"b", b.unified},
                  {"b_branch", b.branch},
                  {"b_via_counts", b.via_counts}});
  j["b"] = bs;
  json br;
  br["empty_real_locus"] = a.brauer.empty_real_locus;
  json opts = json::array();
  for (const auto& o : a.brauer.options)
    opts.push_back({{"beta", o.beta},
                    {"b", o.b},
                    {"s_nor", o.s_nor},
                    {"s_or", o.s_or},
                    {"s", o.s},
                    {"epsilon", o.epsilon},
                    {"br", o.br}});
  br["options"] = opts;
  br["br_choices"] = a.brauer.br_choices();
  j["brauer"] = br;
  j["s_nor_predicted"] = a.s_nor_predicted ? json(*a.s_nor_predicted) : json(nullptr);
  json checks = json::array();
  for (const auto& c : a.checks.checks)
    checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  j["checks"] = checks;
  j["consistent"] = a.checks.all_ok();
  return j;
}

json profile_json(const InvariantProfile& p) {
  return {{"theta", {p.r_theta, p.a_theta, p.delta_theta}},
          {"sigma", {p.r_sigma, p.a_sigma, p.delta_sigma}},
          {"tau_sigma", {p.r_tausigma, p.a_tausigma, p.delta_tausigma}},
          {"h_plus", p.h_plus},
          {"h_minus", p.h_minus},
          {"c", p.c},
          {"gamma", p.gamma},
          {"alpha", p.alpha},
          {"delta_pm", p.delta_pm},
          {"beta", p.beta},
          {"s_sigma", p.s_sigma},
          {"s_tau_sigma", p.s_tausigma},
          {"s_nor", p.s_nor},
          {"s_or", p.s_or},
          {"s", p.s},
          {"b", p.b}};
}

json enumeration_report(const std::vector<InvariantProfile>& profiles, const BoundReport& b) {
  json j;
  j["note"] = "profiles satisfy the invariant constraints only; lattice existence is not certified";
  json ps = json::array();
  for (const auto& p : profiles) ps.push_back(profile_json(p));
  j["profiles"] = ps;
  json sw = json::array(), nw = json::array();
  for (const auto& p : b.s_witnesses) sw.push_back(profile_json(p));
  for (const auto& p : b.s_nor_witnesses) nw.push_back(profile_json(p));
  j["bounds"] = {{"profile_count", b.profile_count},
                 {"max_s", b.max_s},
                 {"max_s_nor", b.max_s_nor},
                 {"intermediate_bound_holds", b.intermediate_bound_holds},
                 {"s_witnesses", sw},
                 {"s_nor_witnesses", nw}};
  return j;
}

namespace {

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool flat(const json& v) {
  return std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
}

void render(const json& j, int indent, std::ostringstream& o) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_object()) {
      o << pad << it.key() << ":\n";
      render(v, indent + 2, o);
    } else if (v.is_array() && flat(v)) {
      o << pad << it.key() << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) o << (i ? ", " : "") << scalar(v[i]);
      o << "]\n";
    } else if (v.is_array()) {
      o << pad << it.key() << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          std::ostringstream inner;
          render(e, indent + 4, inner);
          std::string s = inner.str();
          s.replace(static_cast<std::size_t>(indent), 4, "  - ");
          o << s;
        } else if (e.is_array()) {
          o << pad << "  - [";
          for (std::size_t i = 0; i < e.size(); ++i) o << (i ? ", " : "") << scalar(e[i]);
          o << "]\n";
        } else {
          o << pad << "  - " << scalar(e) << "\n";
        }
      }
    } else {
      const std::string sv = scalar(v);
      o << pad << it.key() << ":" << (sv.empty() ? "" : " " + sv) << "\n";
    }
  }
}

}  // namespace

std::string to_text(const json& j) {
  std::ostringstream o;
  render(j, 0, o);
  return o.str();
}

}  // namespace k3lat::io
