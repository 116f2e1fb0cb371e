#include "flagforms/rootcalc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace flagforms {

Polynomial elementary_symmetric(std::size_t num_vars, const std::vector<std::size_t>& vars, int j) {
  // Coefficients of prod (1 + x_v t), built incrementally.
  std::vector<Polynomial> e{Polynomial::constant(num_vars, 1)};
  for (std::size_t v : vars) {
    e.emplace_back(num_vars);
    for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] += e[k - 1] * Polynomial::variable(num_vars, v);
  }
  if (j < 0 || j >= static_cast<int>(e.size())) return Polynomial(num_vars);
  return e[static_cast<std::size_t>(j)];
}

std::vector<RootPoly> universal_chern_classes(const DimensionSequence& rho, int ell, int l) {
  const int r = rho.rank();
  const auto [lo, hi] = rho.block_range(ell, l);
  std::vector<std::size_t> vars;
  for (int i = lo; i <= hi; ++i) vars.push_back(static_cast<std::size_t>(i - 1));
  std::vector<RootPoly> out;
  for (int j = 0; j <= hi - lo + 1; ++j) {
    Polynomial e = elementary_symmetric(static_cast<std::size_t>(r), vars, j);
    if (j % 2 == 1) e *= Rational(-1);
    out.emplace_back(r, std::move(e));
  }
  return out;
}

RootPoly universal_total_chern(const DimensionSequence& rho, int ell, int l) {
  RootPoly total = RootPoly::zero(rho.rank());
  for (const RootPoly& c : universal_chern_classes(rho, ell, l)) total += c;
  return total;
}

RootPoly expand_expression(const Expr& e, const DimensionSequence& rho) {
  validate(e, rho);
  const int r = rho.rank();
  std::map<std::pair<int, int>, std::vector<RootPoly>> classes;
  auto leaf = [&](int j, const BundleRef& b) -> RootPoly {
    const UniversalBundle u = resolve(b, rho);
    auto key = std::make_pair(u.ell, u.l);
    auto it = classes.find(key);
    if (it == classes.end()) it = classes.emplace(key, universal_chern_classes(rho, u.ell, u.l)).first;
    return it->second.at(static_cast<std::size_t>(j));
  };
  auto constant = [&](const Rational& q) { return RootPoly::constant(r, q); };
  return evaluate<RootPoly>(e, leaf, constant);
}

bool is_block_symmetric(const RootPoly& p, const DimensionSequence& rho) {
  const int r = rho.rank();
  // Adjacent transpositions inside each block generate the block group.
  for (int i = 1; i < r; ++i) {
    if (rho.block_of(i) != rho.block_of(i + 1)) continue;
    std::vector<int> perm(static_cast<std::size_t>(r));
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[static_cast<std::size_t>(i - 1)], perm[static_cast<std::size_t>(i)]);
    if (!(p.poly().permuted(perm) == p.poly())) return false;
  }
  return true;
}

}  // namespace flagforms
