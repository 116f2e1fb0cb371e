#include <doctest.h>

#include <map>
#include <set>
#include <stdexcept>

#include "flagforms/combinat.hpp"

using namespace flagforms;

TEST_CASE("partition counts match the partition function") {
  const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int k = 0; k <= 8; ++k) CHECK(partitions(k, k).size() == static_cast<std::size_t>(p[k]));
  CHECK(partitions(4, 2).size() == 3);
  CHECK(partitions(3, 3).front() == Partition{3});
  CHECK(partitions(3, 3).back() == Partition{1, 1, 1});
}

TEST_CASE("conjugation is an involution preserving weight") {
  for (int k = 0; k <= 8; ++k) {
    for (const Partition& s : partitions(k, k)) {
      CHECK(conjugate(conjugate(s)) == s);
      CHECK(weight(conjugate(s)) == k);
    }
  }
  CHECK(conjugate({3, 1}) == Partition{2, 1, 1});
  CHECK(normalize({2, 1, 0, 0}) == Partition{2, 1});
  CHECK_FALSE(is_partition({1, 2}));
}

TEST_CASE("padded conjugate and flag exponents") {
  CHECK(padded_conjugate({2, 1}, 4) == IntSequence{2, 1, 0, 0});
  CHECK_THROWS_AS(padded_conjugate({5}, 4), std::invalid_argument);
  const IntSequence lambda = flag_exponents_from_conjugate({2, 1, 0, 0});
  // lambda_j = t_{r-j+1} + j - 1
  CHECK(lambda == IntSequence{0, 1, 3, 5});
}

TEST_CASE("dimension sequences") {
  CHECK_THROWS(DimensionSequence({0, 2, 2}));
  CHECK_THROWS(DimensionSequence({1, 2}));
  CHECK_THROWS(DimensionSequence({0}));
  for (int r = 1; r <= 6; ++r) {
    const auto all = all_dimension_sequences(r);
    CHECK(all.size() == (std::size_t{1} << (r - 1)));
    for (const DimensionSequence& rho : all) {
      const IntSequence nu = fiber_shift(rho);
      CHECK(weight(nu) == relative_dimension(rho));
      CHECK(chart_pairs(rho).size() == static_cast<std::size_t>(relative_dimension(rho)));
      for (int i = 1; i <= r; ++i) {
        const int ell = rho.block_of(i);
        const auto [lo, hi] = rho.block_range(ell - 1, ell);
        CHECK(lo <= i);
        CHECK(i <= hi);
      }
      for (const auto& [lambda, mu] : chart_pairs(rho)) {
        CHECK(lambda < mu);
        CHECK(rho.block_of(lambda) != rho.block_of(mu));
      }
    }
  }
  const DimensionSequence g = DimensionSequence::grassmannian(2, 4);
  CHECK(relative_dimension(g) == 4);
  CHECK(g.block_range(0, 1) == std::make_pair(3, 4));
  CHECK(g.block_range(1, 2) == std::make_pair(1, 2));
  CHECK(relative_dimension(DimensionSequence::complete(4)) == 6);
}

TEST_CASE("compositions enumerate exponent vectors") {
  const auto c = compositions(3, 3);
  CHECK(c.size() == 10);
  CHECK(c.front() == std::vector<int>{3, 0, 0});
  std::set<std::vector<int>> unique(c.begin(), c.end());
  CHECK(unique.size() == c.size());
  CHECK(reversed({1, 2, 3}) == IntSequence{3, 2, 1});
  CHECK(difference({3, 2}, {1, 1}) == IntSequence{2, 1});
}
