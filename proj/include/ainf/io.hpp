#pragma once

#include <optional>
#include <string>

#include "ainf/equivariant.hpp"
#include "ainf/morphisms.hpp"

namespace ainf {

// Contents of a structure file. T*-module sections and morphism sections are optional.
struct ParsedFile {
  AInftyStructure structure;
  std::optional<TStarModule> tstar;
  std::optional<GradedModule> target;  // [target_basis]
  std::optional<Family> components;    // [components], bar degree 0
};

// errors are ParseError with "<origin>:<line>: ..." locations
ParsedFile parse_structure(const std::string& text, const std::string& origin = "<input>");
ParsedFile load_structure(const std::string& path);

std::string serialize_structure(const AInftyStructure& a);
std::string serialize_tstar(const AInftyStructure& a, const TStarModule& m);
std::string serialize_morphism(const AInftyMorphism& f);

// "c*name + ..." with names from mod
Vec parse_vec(const GradedModule& mod, const std::string& s);

}  // namespace ainf
