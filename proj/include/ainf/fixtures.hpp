#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ainf/equivariant.hpp"

namespace ainf {

struct Fixture {
  std::string name;
  std::optional<Dga> dga;
  AInftyStructure structure;
  std::optional<TStarModule> tstar;
};

// catalog order; "CW" is the curved Cartan model of M6i used for the equivariant transfer,
// "ROT" a free rotation with no invariants besides zero
const std::vector<std::string>& fixture_names();
Fixture build_fixture(const std::string& name);  // throws UnknownFixture

}  // namespace ainf
