#pragma once

// JSON file formats for complexes, Lie algebras, piecewise forms, covers and
// section families, and the report encodings used by the command line tool.
// Rationals are always strings ("p/q" or "p").

#include <filesystem>
#include <string>

#include <json.hpp>

#include "psforms/cohomology.hpp"
#include "psforms/sheaf.hpp"

namespace psforms::io {

using Json = nlohmann::ordered_json;

/// Input problem located in a file; `location` is a JSON pointer or
/// "line:column" for syntax errors.
class ParseError : public InputError {
 public:
  ParseError(std::string file, std::string location, const std::string& message);
  std::string file;
  std::string location;
};

/// Reads and parses a JSON file, reporting syntax errors with line and column.
Json read_json(const std::filesystem::path& path);

// {"vertices": [...], "simplices": [[...], ...]}; closure is implied.
SimplicialComplex complex_from_json(const Json& j, const std::string& file = "<input>");
Json to_json(const SimplicialComplex& K);

// {"dim": n, "brackets": [[i, j, [[k, "p/q"], ...]], ...]} with i < j.
// The result is checked against the Jacobi identity.
LieAlgebra lie_algebra_from_json(const Json& j, const std::string& file = "<input>");
Json to_json(const LieAlgebra& g);

/// Either an array of term objects
///   {"simplex": [...], "coeff": "p/q", "monomial": {v: e}, "dt": [...], "dual": [...]}
/// or {"degree": p, "terms": [...]} (needed for a zero form of positive
/// degree). Components are not checked for face compatibility here.
PiecewiseForm piecewise_from_json(const Json& j, ComplexPtr parent, const std::string& file = "<input>");
Json terms_to_json(const AlgebroidForm& w);
Json to_json(const PiecewiseForm& w);

// {"cover": [[center vertices...], ...]}
Cover cover_from_json(const Json& j, const std::string& file = "<input>");
Json to_json(const Cover& c);

/// A directory holding <index>.json per cover member, or a JSON object
/// mapping member index to a form file (relative paths are taken from the
/// map's directory). Each section is read over its member's closed star;
/// compatibility is left to check_gluing.
SectionFamily load_sections(const std::filesystem::path& path, ComplexPtr parent, const Cover& cover);

Json to_json(const Simplex& s);
Json to_json(const BettiTable& t);
Json to_json(const Incompatibility& w);
Json to_json(const PartitionCertificate& c);

SimplicialComplex load_complex(const std::filesystem::path& path);
LieAlgebra load_lie_algebra(const std::filesystem::path& path);
/// Validates face compatibility unless `validate` is false (throws Incompatible).
PiecewiseForm load_piecewise(const std::filesystem::path& path, ComplexPtr parent, bool validate = true);
Cover load_cover(const std::filesystem::path& path);

}  // namespace psforms::io
