#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3lat/enriques.hpp"
#include "k3lat/enumerate.hpp"

namespace k3lat::io {

// Text documents are sequences of blocks. Blank lines and lines starting
// with '#' are ignored.
//
//   lattice <name>                  involution <name> on <lattice-name>
//   rank <N>                        matrix
//   gram                            <N rows of N integers>
//   <N rows of N integers>
//
//   triple <lattice-name> <tau-name> <sigma-name>
//
// Names not defined in the document fall back to the catalog.
struct InvolutionBlock {
  std::string name, lattice;
  IntMatrix matrix;
  bool operator==(const InvolutionBlock&) const = default;
};

struct TripleLine {
  std::string lattice, tau, sigma;
  bool operator==(const TripleLine&) const = default;
};

struct Document {
  std::vector<Lattice> lattices;
  std::vector<InvolutionBlock> involutions;
  std::optional<TripleLine> triple;
};

// Throws InputError with the offending line number.
Document parse_document(const std::string& text);
std::string format_document(const Document& d);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

std::string format_lattice(const Lattice& l);
std::string format_involution(const InvolutionBlock& b);

// JSON mirror of the lattice block.
nlohmann::ordered_json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const nlohmann::json& j);

// A lattice read from either format; JSON is recognized by a leading '{'.
Lattice load_lattice(const std::string& text);

LatticePtr resolve_lattice(const Document& d, const std::string& name);
IsometryInvolution resolve_involution(const Document& d, const std::string& name);
// The involution block of the document (the first one) or, if there is none,
// nothing.
std::optional<IsometryInvolution> first_involution(const Document& d);
EnriquesActionTriple resolve_triple(const Document& d);

// Catalog fixtures. Triple names are "reference" and "enriques_<sigma>" for
// every hyperbolic member of the block family.
std::vector<std::string> catalog_triple_names();
Document catalog_triple(const std::string& name);
Document catalog_fixture(const std::string& name);  // lattice, involution or triple

std::string rat_str(const Rat& x);

nlohmann::ordered_json lattice_report(const Lattice& l);
nlohmann::ordered_json involution_report(const IsometryInvolution& phi);
nlohmann::ordered_json analysis_report(const EnriquesActionTriple& t, const EnriquesAnalysis& a);
nlohmann::ordered_json profile_json(const InvariantProfile& p);
nlohmann::ordered_json enumeration_report(const std::vector<InvariantProfile>& profiles,
                                  const BoundReport& b);

// Indented "key: value" rendering of a report.
std::string to_text(const nlohmann::ordered_json& j);

}  // namespace k3lat::io
