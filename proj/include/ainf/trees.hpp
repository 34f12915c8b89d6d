#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ainf/hpl.hpp"

namespace ainf {

// Planar rooted tree; a null child is a leaf.
struct RibbonTree {
  int k = 0;
  Beta beta;
  std::vector<std::shared_ptr<const RibbonTree>> children;

  int leaves() const;
  Beta total() const;
  std::string str() const;  // "(k;E,mu child ...)" with "x" for leaves
};

using TreePtr = std::shared_ptr<const RibbonTree>;

std::vector<TreePtr> enumerate_trees(int k, const Beta& beta, const GappedMonoid& g, const Rational& cutoff);

enum class TreeRoot { Projection, Homotopy };

// Evaluates one tree in postorder; with TreeRoot::Homotopy the root output is
// hit by h instead of projected, which gives the inclusion components.
std::map<Beta, Vec> evaluate_tree(const RibbonTree& t, const AInftyStructure& a, const Retraction& r,
                                  std::span<const int> x, TreeRoot root = TreeRoot::Projection);

std::map<Beta, Vec> tree_transfer(const AInftyStructure& a, const Retraction& r, std::span<const int> x, int k,
                                  const Beta& beta, TreeRoot root = TreeRoot::Projection);
// all labels at once: k fixed, every beta up to the cutoff
std::map<Beta, Vec> tree_transfer_all(const AInftyStructure& a, const Retraction& r, std::span<const int> x,
                                      TreeRoot root = TreeRoot::Projection);

}  // namespace ainf
