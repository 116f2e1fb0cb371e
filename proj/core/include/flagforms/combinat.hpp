#pragma once

#include <utility>
#include <vector>

namespace flagforms {

// Weakly decreasing list of non-negative integers. Trailing zeros are
// allowed on input; normalize() strips them.
using Partition = std::vector<int>;

// Arbitrary integer sequence (entries may be negative or non-monotone).
using IntSequence = std::vector<int>;

// Strictly increasing 0 = rho_0 < rho_1 < ... < rho_m = r, m >= 1.
class DimensionSequence {
 public:
  explicit DimensionSequence(std::vector<int> rho);

  // Complete flag (0,1,...,r).
  static DimensionSequence complete(int r);
  // Two-step sequence (0,s,r): the Grassmannian of s-dimensional subspaces.
  static DimensionSequence grassmannian(int s, int r);

  const std::vector<int>& values() const { return rho_; }
  int operator[](int i) const { return rho_[static_cast<std::size_t>(i)]; }
  int rank() const { return rho_.back(); }
  int length() const { return static_cast<int>(rho_.size()) - 1; }

  // 1-based root indices of the universal quotient U_l/U_ell:
  // r - rho_l < i <= r - rho_ell.
  std::pair<int, int> block_range(int ell, int l) const;
  // Index ell of the elementary block containing root index i (1-based).
  int block_of(int i) const;

  friend bool operator==(const DimensionSequence&, const DimensionSequence&) = default;

 private:
  std::vector<int> rho_;
};

bool is_partition(const std::vector<int>& parts);
Partition normalize(Partition sigma);
int weight(const std::vector<int>& seq);

Partition conjugate(const Partition& sigma);

// All partitions of k with parts <= max_part, in reverse lexicographic order
// ((k) first when k <= max_part).
std::vector<Partition> partitions(int k, int max_part);

// Conjugate of sigma padded with zeros (or truncated) to length r.
// Throws std::invalid_argument when a part exceeds r.
IntSequence padded_conjugate(const Partition& sigma, int r);

// lambda_j = t_{r-j+1} + j - 1.
IntSequence flag_exponents_from_conjugate(const IntSequence& padded);

// nu_i = r - rho_ell for the block r - rho_ell < i <= r - rho_{ell-1}.
IntSequence fiber_shift(const DimensionSequence& rho);

// Chart coordinate pairs (lambda, mu), 1-based, lexicographic.
std::vector<std::pair<int, int>> chart_pairs(const DimensionSequence& rho);

int relative_dimension(const DimensionSequence& rho);

IntSequence reversed(IntSequence seq);

IntSequence difference(const IntSequence& a, const IntSequence& b);

// Every dimension sequence of rank r (2^(r-1) of them), ordered by
// their interior entries lexicographically.
std::vector<DimensionSequence> all_dimension_sequences(int r);

// Exponent vectors of length n with total degree d, lexicographically
// descending.
std::vector<std::vector<int>> compositions(int d, int n);

}  // namespace flagforms
