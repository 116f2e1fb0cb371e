#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "flagforms/gysin.hpp"
#include "flagforms/rootcalc.hpp"
#include "oracles.hpp"

using namespace flagforms;

namespace {

double eval_chern(const ChernPoly& p, const std::vector<double>& roots) {
  // c_j = (-1)^j e_j(xi)
  const auto e = oracle::elementary(roots);
  double acc = 0.0;
  for (const auto& [ex, c] : p.poly().terms()) {
    double t = to_double(c);
    for (std::size_t j = 0; j < ex.size(); ++j) t *= std::pow((j % 2 == 0 ? -1.0 : 1.0) * e[j + 1], ex[j]);
    acc += t;
  }
  return acc;
}

std::vector<int> root_blocks(const DimensionSequence& rho) {
  std::vector<int> b;
  for (int i = 1; i <= rho.rank(); ++i) b.push_back(rho.block_of(i));
  return b;
}

double oracle_push(const RootPoly& f, const DimensionSequence& rho, const std::vector<double>& x) {
  const auto blocks = root_blocks(rho);
  double acc = 0.0;
  for (const auto& [e, c] : f.poly().terms()) acc += to_double(c) * oracle::symmetrize(e, blocks, x);
  // Normalize so that the reference monomial xi^nu pushes to 1.
  const double ref = oracle::symmetrize(fiber_shift(rho), blocks, x);
  return acc / ref;
}

}  // namespace

TEST_CASE("reference push-forwards along rank-4 Grassmannian bundles") {
  struct Row {
    int s, alpha, beta;
    const char* value;
  };
  const Row rows[] = {{1, 2, 2, "c1^3 + 2*c1*c2 - c3"},
                      {1, 3, 2, "c1^4 + 3*c1^2*c2 - 3*c1*c3 - c4"},
                      {2, 3, 2, "c1^3 - c3"},
                      {2, 4, 2, "c1^4 - 3*c1*c3 + 2*c4"}};
  for (const Row& row : rows) {
    const GrassmannPushforward g = grassmann_quotient_pushforward(4, 4, row.s, row.alpha, row.beta);
    CHECK(g.value.to_string() == row.value);
  }
  const GrassmannPushforward g = grassmann_quotient_pushforward(4, 4, 1, 3, 2);
  REQUIRE(g.schur.coords.size() == 5);
  CHECK(g.schur.at({4}) == 0);
  CHECK(g.schur.at({3, 1}) == 6);
  CHECK(g.schur.at({2, 2}) == 5);
  CHECK(g.schur.at({2, 1, 1}) == 6);
  CHECK(g.schur.at({1, 1, 1, 1}) == 1);
}

TEST_CASE("determinantal push-forward agrees with numeric Weyl symmetrization") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const char* exprs[] = {"c1(U1)^3", "c1(U2/U1)^2*c1(U1)", "c2(E)*c1(U1)^2", "c1(U1)^4 - c2(U2)^2"};
  for (int r = 2; r <= 4; ++r) {
    for (const DimensionSequence& rho : all_dimension_sequences(r)) {
      if (rho.length() < 2) continue;
      for (const char* text : exprs) {
        const Expr e = parse_expression(text);
        try {
          validate(e, rho);
        } catch (const std::invalid_argument&) {
          continue;
        }
        const RootPoly f = expand_expression(e, rho);
        const ChernPoly pushed = pushforward_determinantal(f, rho);
        for (int trial = 0; trial < 3; ++trial) {
          std::vector<double> x(static_cast<std::size_t>(r));
          for (auto& v : x) v = u(rng);
          CHECK(eval_chern(pushed, x) == doctest::Approx(oracle_push(f, rho, x)).epsilon(1e-7).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("symmetrizer oracle matches on every low-degree monomial") {
  for (int r = 1; r <= 3; ++r) {
    for (const DimensionSequence& rho : all_dimension_sequences(r)) {
      DeterminantalPushforward dp(rho);
      SymmetrizerOracle oracle(rho);
      const int d = relative_dimension(rho);
      for (int deg = 0; deg <= d + 3; ++deg) {
        for (const auto& e : compositions(deg, r)) {
          const RootPoly f = RootPoly::monomial(e);
          CHECK(dp.push(f) == oracle.push(f));
        }
      }
    }
  }
}

TEST_CASE("degree bookkeeping") {
  const DimensionSequence rho({0, 1, 3});
  const int d = relative_dimension(rho);
  // Below the fiber dimension the push-forward vanishes.
  for (const auto& e : compositions(d - 1, 3)) CHECK(pushforward_determinantal(RootPoly::monomial(e), rho).is_zero());
  const RootPoly ref = RootPoly::monomial(fiber_shift(rho));
  CHECK(pushforward_determinantal(ref, rho) == ChernPoly::one(3));
  for (const auto& e : compositions(d + 2, 3)) {
    const ChernPoly p = pushforward_determinantal(RootPoly::monomial(e), rho);
    CHECK(p.is_homogeneous_of(2));
  }
}

TEST_CASE("non block-symmetric input is flagged") {
  const DimensionSequence rho = DimensionSequence::complete(2);
  DeterminantalPushforward dp(DimensionSequence::grassmannian(1, 3));
  std::vector<std::string> warnings;
  dp.push(RootPoly::monomial({0, 2, 1}), warnings);
  CHECK(warnings.size() == 1);
  warnings.clear();
  dp.push(expand_expression(parse_expression("c1(Q1)^2"), DimensionSequence::grassmannian(1, 3)), warnings);
  CHECK(warnings.empty());
  CHECK(is_block_symmetric(RootPoly::monomial({1, 1}), rho));
}

TEST_CASE("Schur polynomials as push-forwards from the complete flag") {
  const int expected[] = {0, 1, -1, -1, 1};
  for (int r = 1; r <= 4; ++r) {
    CHECK(flag_sign(r, 4) == expected[r]);
    for (int k = 0; k <= 4; ++k) {
      for (const Partition& sigma : partitions(k, r)) {
        const FlagSchurResult res = schur_from_complete_flag(sigma, r);
        CHECK(res.epsilon == expected[r]);
        CHECK(res.value == schur_polynomial(sigma, r) * Rational(expected[r]));
      }
    }
  }
}

TEST_CASE("Grassmann push-forward input validation") {
  CHECK_THROWS_AS(grassmann_quotient_pushforward(4, 4, 1, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(grassmann_quotient_pushforward(4, 4, 1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(grassmann_quotient_pushforward(4, 4, 1, 9, 0), std::invalid_argument);
  CHECK_THROWS_AS(grassmann_quotient_pushforward(4, 4, 0, 2, 2), std::invalid_argument);
  // c_2 of a rank-1 quotient vanishes.
  CHECK(grassmann_quotient_pushforward(4, 4, 3, 3, 1).value.is_zero());
}

TEST_CASE("universal Chern classes") {
  const DimensionSequence rho = DimensionSequence::grassmannian(1, 3);
  const auto c = universal_chern_classes(rho, 1, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[1].to_string() == "-xi1 - xi2");
  CHECK(c[2].to_string() == "xi1*xi2");
  CHECK(universal_chern_classes(rho, 0, 1)[1].to_string() == "-xi3");
}
