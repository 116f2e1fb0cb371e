#pragma once

#include <vector>

#include "flagforms/combinat.hpp"
#include "flagforms/expression.hpp"
#include "flagforms/polynomial.hpp"

namespace flagforms {

struct RootTag {
  static int weight(std::size_t) { return 1; }
  static constexpr const char* prefix = "xi";
};

// Polynomial in the Chern roots xi_1..xi_r of the pulled-back dual bundle.
using RootPoly = GradedPoly<RootTag>;

// Total Chern class of U_l/U_ell: product of (1 - xi_i) over its root block,
// returned graded: entry j is c_j = e_j(-xi_block), j = 0..rank.
std::vector<RootPoly> universal_chern_classes(const DimensionSequence& rho, int ell, int l);

// Sum of the graded pieces.
RootPoly universal_total_chern(const DimensionSequence& rho, int ell, int l);

// Substitutes root expressions for every c_j(B) and expands.
RootPoly expand_expression(const Expr& e, const DimensionSequence& rho);

// True when p is invariant under permutations of roots inside each block.
bool is_block_symmetric(const RootPoly& p, const DimensionSequence& rho);

// Elementary symmetric polynomial e_j of the given variables (0-based).
Polynomial elementary_symmetric(std::size_t num_vars, const std::vector<std::size_t>& vars, int j);

}  // namespace flagforms
