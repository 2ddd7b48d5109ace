#include <doctest.h>

#include "k3lat/io.hpp"
#include "support.hpp"

using namespace k3lat;

namespace {

std::string fixture(const std::string& name) {
  return io::read_file(std::string(K3LAT_FIXTURE_DIR) + "/" + name);
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("catalog fixtures round-trip byte for byte") {
  for (const char* name : {"E8", "U(2)", "<-2>", "K3", "tau_ref", "reference",
                           "enriques_blk_plus_minus_d_id_d"}) {
    CAPTURE(name);
    const std::string text = io::format_document(io::catalog_fixture(name));
    CHECK(io::format_document(io::parse_document(text)) == text);
  }
}

TEST_CASE("checked-in fixtures match the catalog") {
  CHECK(fixture("e8.lattice") == io::format_document(io::catalog_fixture("E8")));
  CHECK(fixture("reference.triple") == io::format_document(io::catalog_fixture("reference")));
}

TEST_CASE("lattice JSON mirrors the text format") {
  const Lattice e8 = catalog::e8();
  const auto j = io::lattice_to_json(e8);
  CHECK(j["lattice"] == "E8");
  CHECK(j["rank"] == 8);
  const Lattice back = io::load_lattice(j.dump());
  CHECK(back.gram == e8.gram);
  CHECK(back.name == "E8");
  CHECK(io::load_lattice(io::format_lattice(e8)).gram == e8.gram);
}

TEST_CASE("parse errors name the problem") {
  CHECK(error_of([] { io::parse_document("lattice A\nrank 2\ngram\n2 1\n0 2\n"); })
            .find("entry (1,2) = 1 but (2,1) = 0") != std::string::npos);
  CHECK(error_of([] { io::parse_document("lattice A\nrank 2\ngram\n2 x\n1 2\n"); })
            .find("line 4: not an integer: x") != std::string::npos);
  CHECK(error_of([] { io::parse_document("lattice A\nrank 2\ngram\n2 1 0\n1 2\n"); })
            .find("expected 2 integers, got 3") != std::string::npos);
  CHECK(error_of([] { io::parse_document("module A\n"); }).find("unknown block") != std::string::npos);
  CHECK(error_of([] { io::parse_document("lattice A\nrank 2\ngram\n2 1\n"); })
            .find("unexpected end of input") != std::string::npos);
  CHECK(error_of([] { io::resolve_triple(io::parse_document("lattice U\nrank 2\ngram\n0 1\n1 0\n")); })
            .find("no 'triple' line") != std::string::npos);
  CHECK_THROWS_AS(io::load_lattice("{\"lattice\": \"A\", \"rank\": 2, \"gram\": [[2, 1], [0, 2]]}"),
                  InputError);
}

TEST_CASE("triples resolve against the catalog") {
  const auto t = io::resolve_triple(io::parse_document("triple K3 tau_ref sigma_ref\n"));
  CHECK(t.inv_sigma == InvolutionInvariants{1, 1, 1});
  CHECK(error_of([] { io::resolve_triple(io::parse_document(fixture("noncommuting.triple"))); }) ==
        "involutions do not commute");
}

TEST_CASE("reference analysis matches the golden report") {
  const auto& set = k3test::catalog_set();
  const auto doc = io::parse_document(fixture("reference.triple"));
  const auto t = io::resolve_triple(doc);
  const auto a = analyze(t);
  CHECK(io::analysis_report(t, a).dump(2) + "\n" == fixture("reference_analysis.json"));
  CHECK(io::analysis_report(t, a) == io::analysis_report(set.triples.front(), set.analyses.front()));
}

TEST_CASE("rationals render as p/q") {
  CHECK(io::rat_str(Rat(3, 2)) == "3/2");
  CHECK(io::rat_str(Rat(4, 2)) == "2");
  CHECK(io::rat_str(Rat(-1, 3)) == "-1/3");
}

TEST_CASE("text rendering") {
  nlohmann::ordered_json j;
  j["a"] = 1;
  j["b"] = {{"c", "x"}};
  j["d"] = nlohmann::ordered_json::array({1, 2});
  j["e"] = nlohmann::ordered_json::array({{{"f", 3}, {"g", 4}}});
  CHECK(io::to_text(j) == "a: 1\nb:\n  c: x\nd: [1, 2]\ne:\n  - f: 3\n    g: 4\n");
}
