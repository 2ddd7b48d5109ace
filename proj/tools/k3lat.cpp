#include <CLI11.hpp>
#include <filesystem>
#include <iomanip>
#include <iostream>

#include "k3lat/catalog.hpp"
#include "k3lat/io.hpp"

using namespace k3lat;
using json = nlohmann::ordered_json;

namespace {

std::string format = "text";

void emit(const json& j) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << io::to_text(j);
}

int cmd_lattice_info(const std::string& path) {
  emit(io::lattice_report(io::load_lattice(io::read_file(path))));
  return 0;
}

int cmd_involution_invariants(const std::string& path) {
  const io::Document d = io::parse_document(io::read_file(path));
  auto phi = io::first_involution(d);
  if (!phi) throw InputError("no involution block in " + path);
  emit(io::involution_report(*phi));
  return 0;
}

int cmd_analyze(const std::string& path) {
  const io::Document d = io::parse_document(io::read_file(path));
  const EnriquesActionTriple t = io::resolve_triple(d);
  const EnriquesAnalysis a = analyze(t);
  emit(io::analysis_report(t, a));
  if (!a.checks.all_ok()) {
    for (const auto& c : a.checks.checks)
      if (!c.ok) std::cerr << "inconsistent: " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    return 2;
  }
  return 0;
}

void print_profile_table(const std::vector<InvariantProfile>& ps) {
  const char* cols[] = {"r_t", "a_t", "d_t", "r_s", "a_s", "d_s", "r_ts", "a_ts", "d_ts", "h+", "h-",
                        "c",   "gam", "alp", "dpm", "bet", "s_s", "s_ts", "snor", "sor", "s",  "b"};
  for (const char* c : cols) std::cout << std::setw(5) << c;
  std::cout << "\n";
  for (const auto& p : ps) {
    for (int v : {p.r_theta, p.a_theta, p.delta_theta, p.r_sigma, p.a_sigma, p.delta_sigma,
                  p.r_tausigma, p.a_tausigma, p.delta_tausigma, p.h_plus, p.h_minus, p.c, p.gamma,
                  p.alpha, p.delta_pm, p.beta, p.s_sigma, p.s_tausigma, p.s_nor, p.s_or, p.s, p.b})
      std::cout << std::setw(5) << v;
    std::cout << "\n";
  }
}

int cmd_enumerate(bool max_s, bool max_snor) {
  const auto profiles = enumerate_profiles();
  const BoundReport b = bound_report(profiles);
  if (max_s || max_snor) {
    if (format == "json") {
      json j;
      if (max_s) j["max_s"] = b.max_s;
      if (max_snor) j["max_s_nor"] = b.max_s_nor;
      std::cout << j.dump(2) << "\n";
    } else {
      if (max_s) std::cout << b.max_s << "\n";
      if (max_snor) std::cout << b.max_s_nor << "\n";
    }
    return b.intermediate_bound_holds ? 0 : 2;
  }
  if (format == "json") {
    std::cout << io::enumeration_report(profiles, b).dump(2) << "\n";
  } else {
    std::cout << "# profiles satisfy the invariant constraints only; lattice existence is not certified\n";
    print_profile_table(profiles);
    std::cout << "# profiles: " << b.profile_count << "\n# max s: " << b.max_s << " ("
              << b.s_witnesses.size() << " witnesses)\n# max s_nor: " << b.max_s_nor << " ("
              << b.s_nor_witnesses.size() << " witnesses)\n# intermediate bound on every profile: "
              << (b.intermediate_bound_holds ? "yes" : "no") << "\n";
    std::cout << "# s witnesses:\n";
    print_profile_table(b.s_witnesses);
    std::cout << "# s_nor witnesses:\n";
    print_profile_table(b.s_nor_witnesses);
  }
  return b.intermediate_bound_holds ? 0 : 2;
}

int cmd_catalog_list() {
  json j;
  j["lattices"] = catalog::lattice_names();
  j["involutions"] = catalog::involution_names();
  j["triples"] = io::catalog_triple_names();
  emit(j);
  return 0;
}

int cmd_catalog_emit(const std::string& name, const std::string& dir) {
  const io::Document d = io::catalog_fixture(name);
  const char* ext = d.triple ? ".triple" : !d.involutions.empty() ? ".involution" : ".lattice";
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / (name + ext)).string();
  io::write_file(path, io::format_document(d));
  std::cout << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice invariants of real Enriques surfaces"};
  app.require_subcommand(1);
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string path, name, dir;
  bool max_s = false, max_snor = false;

  auto* lattice = app.add_subcommand("lattice", "Lattice commands")->require_subcommand(1);
  auto* info = lattice->add_subcommand("info", "Invariants and discriminant form of a lattice");
  info->add_option("file", path)->required();

  auto* involution = app.add_subcommand("involution", "Involution commands")->require_subcommand(1);
  auto* inv = involution->add_subcommand("invariants", "(r, a, delta) and fixed-set topology");
  inv->add_option("file", path)->required();

  auto* enriques = app.add_subcommand("enriques", "Enriques triple commands")->require_subcommand(1);
  auto* an = enriques->add_subcommand("analyze", "Full analysis of a triple (L, tau, sigma)");
  an->add_option("file", path)->required();

  auto* en = app.add_subcommand("enumerate", "Enumerate invariant profiles and their bounds");
  en->add_flag("--max-s", max_s, "Print the maximum of s only");
  en->add_flag("--max-snor", max_snor, "Print the maximum of s_nor only");

  auto* cat = app.add_subcommand("catalog", "Built-in lattices, involutions and triples")
                  ->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "List catalog names");
  auto* em = cat->add_subcommand("emit", "Write a catalog entry as a text fixture");
  em->add_option("name", name)->required();
  em->add_option("dir", dir)->required();

  for (auto* sub : {lattice, involution, enriques, cat}) sub->fallthrough();
  for (auto* sub : {info, inv, an, list, em}) sub->fallthrough();
  en->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*info) return cmd_lattice_info(path);
    if (*inv) return cmd_involution_invariants(path);
    if (*an) return cmd_analyze(path);
    if (*en) return cmd_enumerate(max_s, max_snor);
    if (*list) return cmd_catalog_list();
    if (*em) return cmd_catalog_emit(name, dir);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistent: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
