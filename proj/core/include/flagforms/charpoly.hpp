#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flagforms/combinat.hpp"
#include "flagforms/determinant.hpp"
#include "flagforms/polynomial.hpp"

namespace flagforms {

struct ChernTag {
  static int weight(std::size_t index) { return static_cast<int>(index) + 1; }
  static constexpr const char* prefix = "c";
};

struct SegreTag {
  static int weight(std::size_t index) { return static_cast<int>(index) + 1; }
  static constexpr const char* prefix = "s";
};

// Polynomial in c_1..c_r, c_j of weight j.
using ChernPoly = GradedPoly<ChernTag>;
// Polynomial in Segre variables s_1..s_D, s_j of weight j.
using SegrePoly = GradedPoly<SegreTag>;

// Coordinates in the Schur basis {S_sigma : |sigma| = degree, parts <= rank}.
struct SchurVector {
  int degree = 0;
  int rank = 0;
  // One entry per basis partition, in partitions(degree, rank) order.
  std::vector<std::pair<Partition, Rational>> coords;

  Rational at(const Partition& sigma) const;
  bool operator==(const SchurVector&) const = default;
};

// s_0..s_max_deg, coefficients of (1 + c_1 t + ... + c_r t^r)^{-1}.
std::vector<ChernPoly> segre_polynomials(int r, int max_deg);

// Jacobi-Trudi determinant det(c_{sigma_i + j - i}) with c_0 = 1 and c_s = 0
// outside 0..r.
ChernPoly schur_polynomial(const Partition& sigma, int r);

// det(s_{sigma_i + j - i}) for an arbitrary integer sequence.
ChernPoly generalized_schur(const IntSequence& sigma, int r);

// Memoizing evaluator for generalized Schur polynomials of a fixed rank;
// the push-forward engine hits the same sequences many times.
class GeneralizedSchurCache {
 public:
  explicit GeneralizedSchurCache(int r) : r_(r) {}
  const ChernPoly& get(const IntSequence& sigma);
  int rank() const { return r_; }

 private:
  int r_;
  std::vector<ChernPoly> segre_;
  std::unordered_map<std::string, ChernPoly> cache_;
};

// Unique coordinates of a weighted-homogeneous P of degree k in the Schur
// basis. Throws std::invalid_argument when P is not homogeneous of degree k.
SchurVector decompose_in_schur_basis(const ChernPoly& p, int k);
ChernPoly reconstruct(const SchurVector& v);

// Rewrites a Chern polynomial in Segre variables s_1..s_D (D = degree bound)
// using c(t) = s(t)^{-1}. The result is unique when the degree is <= r.
SegrePoly to_segre(const ChernPoly& p, int max_deg);
// Substitutes s_j = segre_polynomials(r)[j].
ChernPoly from_segre(const SegrePoly& p, int r);

}  // namespace flagforms
