#pragma once

// The declarative datum document: a JSON schema carrying the combinatorial
// datum, the anticanonical moment polytope, recorded verdicts and optional
// decomposition families. Rationals travel as "p/q" strings; the catalog is
// serialized in exactly this format, so it doubles as format documentation.

#include "horoke/criteria.hpp"

#include <map>
#include <optional>
#include <string>

namespace horoke {

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(int l, int c, const std::string& w)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c) +
                           ": " + w),
        line(l),
        column(c) {}
};

// template of a one-parameter-to-be family in named parameters
struct FamilyTemplate {
  std::vector<std::string> params;
  std::map<std::string, Rat> defaults;
  std::string default_free;
  struct ClassTemplate {
    QVec v0_base, v1_base;
    std::map<std::string, QVec> v0_coeff, v1_coeff;
  };
  std::vector<ClassTemplate> classes;
  struct WindowRow {
    Rat c0;
    std::map<std::string, Rat> coeff;  // c0 + Σ coeff_p · p > 0
  };
  std::vector<WindowRow> window;
};

struct DatumFile {
  int schema = 1;
  std::string id;
  int dim = 0;  // complex dimension of the manifold, when stated
  std::string provenance, notes;
  HorosymmetricDatum datum;
  Polytope anticanonical;
  std::map<std::string, std::string> known;          // claims recorded from the source
  std::map<std::string, std::string> known_derived;  // claims established here
  std::vector<std::string> same_manifold;            // ids sharing the manifold
  std::optional<FamilyTemplate> family;
};

// Parses and validates (build_datum is applied); throws ParseError on
// malformed input and the rootdata validation errors otherwise.
DatumFile parse_datum(const std::string& text);

std::string serialize_datum(const DatumFile& f);

// Binds all-but-one parameters of the family template; the remaining free
// parameter becomes the search variable.
DecompositionFamily bind_family(const FamilyTemplate& tmpl,
                                const std::map<std::string, Rat>& fixed,
                                const std::string& free_param);

// The default Killing-orthogonal projection onto span(spherical_basis).
QMat orthogonal_projection(const QMat& gram, const std::vector<QVec>& basis);

}  // namespace horoke
