#pragma once

#include <memory>

#include "ainf/ainfty.hpp"

namespace ainf {

using StructurePtr = std::shared_ptr<const AInftyStructure>;

struct AInftyMorphism {
  StructurePtr source, target;
  Family comps;  // degree 0, f_{k,beta} : C^k -> C'

  BarElem apply(const BarElem& w) const;
};

// degree -1 (f1, f2)-coderivation
struct AInftyHomotopy {
  AInftyMorphism f1, f2;
  Family comps;
};

AInftyMorphism identity_morphism(const StructurePtr& a);
AInftyMorphism linear_morphism(const StructurePtr& source, const StructurePtr& target, const GradedMatrix& f);

Report check_morphism(const AInftyMorphism& f, int k_max);
// coalgebra composite g o f, components up to arity k_max
AInftyMorphism compose(const AInftyMorphism& g, const AInftyMorphism& f, int k_max);
Report check_homotopy(const AInftyHomotopy& h, int k_max);
Report check_cyclic_morphism(const AInftyMorphism& f, const Pairing& source, const Pairing& target, int k_max);
Report check_unital_morphism(const AInftyMorphism& f, int e, int e_target);

// order-by-order inverse of a tame morphism family with invertible constant g_{1,0}
Family inverse_family(const Family& g, const GradedModule& mod, const Rational& cutoff, const GappedMonoid& monoid,
                      int k_max);
// structure with bar differential g m g^{-1}, components up to arity k_max
AInftyStructure gauge_transform(const AInftyStructure& a, const Family& g, int k_max);
// a unipotent gauge with one random binary component, reproducible from `seed`
Family random_unipotent_gauge(const GradedModule& mod, unsigned seed);

bool families_agree(const Family& a, const Family& b, int k_max);

}  // namespace ainf
