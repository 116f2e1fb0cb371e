#pragma once

#include <string>
#include <vector>

#include "flagforms/charpoly.hpp"
#include "flagforms/combinat.hpp"
#include "flagforms/rootcalc.hpp"

namespace flagforms {

// Determinantal push-forward along F_rho(E) -> X:
//   xi^lambda  |->  s_{reverse(lambda - nu)}(c_1..c_r).
class DeterminantalPushforward {
 public:
  explicit DeterminantalPushforward(DimensionSequence rho);

  ChernPoly push(const RootPoly& f);
  // As push(), appending a message to `warnings` when f is not block
  // symmetric (the formula is still applied monomial by monomial).
  ChernPoly push(const RootPoly& f, std::vector<std::string>& warnings);

  const DimensionSequence& rho() const { return rho_; }
  const IntSequence& nu() const { return nu_; }

 private:
  DimensionSequence rho_;
  IntSequence nu_;
  GeneralizedSchurCache cache_;
};

ChernPoly pushforward_determinantal(const RootPoly& f, const DimensionSequence& rho);

// Independent push-forward by Weyl symmetrization.
//
// Block-symmetric inputs go through the coset sum
//   sum_{w in W/W_P} w( F / prod_{cross-block i<j} (xi_i - xi_j) ),
// evaluated as (1/Delta) sum_w sgn(w) w(F * Delta_within).
// Other inputs are first multiplied by the relative fiber class
// prod_blocks prod_i xi_i^{i - first(block)} and symmetrized over all of S_r
// (push-forward through the complete flag bundle). Each route carries one
// sign, fixed on the reference monomial xi^nu, whose push-forward is 1.
class SymmetrizerOracle {
 public:
  enum class Route { Coset, CompleteFlag };
  static constexpr int kMaxRank = 6;

  explicit SymmetrizerOracle(DimensionSequence rho);

  ChernPoly push(const RootPoly& f) const;
  Route route_for(const RootPoly& f) const;
  int calibration_sign(Route route) const;

  // Uncalibrated symmetrization of a single route, as a polynomial in c.
  ChernPoly raw(const RootPoly& f, Route route) const;

  const DimensionSequence& rho() const { return rho_; }

 private:
  DimensionSequence rho_;
  std::vector<std::vector<int>> cosets_;     // minimal coset representatives
  std::vector<int> coset_signs_;
  std::vector<std::vector<int>> all_perms_;  // S_r
  std::vector<int> all_signs_;
  Polynomial within_vandermonde_;
  Polynomial fiber_class_;
  int coset_sign_ = 1;
  int complete_sign_ = 1;
};

ChernPoly pushforward_symmetrizer(const RootPoly& f, const DimensionSequence& rho);

// Converts a symmetric polynomial in xi_1..xi_r to Chern variables via
// e_j(xi) = (-1)^j c_j. Throws std::domain_error if p is not symmetric.
ChernPoly symmetric_to_chern(const Polynomial& p);

struct FlagSchurResult {
  ChernPoly value;  // push-forward of the signed monomial
  int epsilon = 1;  // value = epsilon * S_sigma
  IntSequence padded;
  IntSequence lambda;
};

// Pushes (-1)^{|lambda|+|sigma|} Xi_1^{lambda_1} ... Xi_r^{lambda_r}, with
// Xi_j = -xi_{r-j+1}, over the complete flag bundle and compares the result
// with the Jacobi-Trudi polynomial S_sigma.
FlagSchurResult schur_from_complete_flag(const Partition& sigma, int r);

// Measures the sign epsilon(r) over every sigma with |sigma| <= max_k and
// parts <= r; throws std::logic_error if it is not constant.
int flag_sign(int r, int max_k);

struct GrassmannPushforward {
  ChernPoly value;
  SchurVector schur;
  RootPoly integrand;
};

// Push-forward of c_1(Q_s)^alpha c_2(Q_s)^beta along the Grassmannian bundle
// rho = (0,s,r). Requires 0 <= beta <= 2 and
// s(r-s) <= alpha + 2 beta <= n + s(r-s). The Schur coordinates are checked
// to be non-negative (std::logic_error otherwise).
GrassmannPushforward grassmann_quotient_pushforward(int r, int n, int s, int alpha, int beta);

}  // namespace flagforms
