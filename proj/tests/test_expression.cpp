#include <doctest.h>

#include <random>
#include <stdexcept>
#include <string>

#include "flagforms/expression.hpp"

using namespace flagforms;

namespace {

std::string random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 5), small(1, 3);
  const char* bundles[] = {"E", "U1", "U2/U1", "Q1", "U2"};
  const int choice = depth <= 0 ? pick(rng) % 2 : pick(rng);
  switch (choice) {
    case 0:
      return std::to_string(small(rng)) + (small(rng) == 2 ? "/3" : "");
    case 1:
      return "c" + std::to_string(small(rng) % 2 + 1) + "(" + bundles[pick(rng) % 5] + ")";
    case 2:
      return random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1);
    case 3:
      return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 4:
      return random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1);
    default:
      return "(" + random_expr(rng, depth - 1) + ")^" + std::to_string(small(rng));
  }
}

}  // namespace

TEST_CASE("parses the push-forward integrands") {
  const Expr e = parse_expression("c1(Q1)^2 * c2(Q1)^2");
  CHECK(homogeneous_degree(e) == 6);
  CHECK_NOTHROW(validate(e, DimensionSequence({0, 1, 4})));
  CHECK(to_string(e) == "c1(Q1)^2*c2(Q1)^2");
  CHECK(to_string(parse_expression("c1 + c2")) == "c1(E) + c2(E)");
}

TEST_CASE("index out of range after resolution") {
  const Expr e = parse_expression("c3(Q2)");
  try {
    validate(e, DimensionSequence::grassmannian(2, 4));
    FAIL("expected an error");
  } catch (const std::invalid_argument& err) {
    CHECK(std::string(err.what()).find("rank of Q2 is 2") != std::string::npos);
  }
  CHECK_THROWS_AS(validate(parse_expression("c1(Q1)"), DimensionSequence({0, 1, 2, 4})), std::invalid_argument);
  CHECK_THROWS_AS(validate(parse_expression("c1(U5)"), DimensionSequence({0, 1, 4})), std::invalid_argument);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_expression("(c1(E) + 1");
    FAIL("expected a syntax error");
  } catch (const ParseError& err) {
    CHECK(err.position() == 10);
    CHECK(std::string(err.what()).find("end of input") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expression("c1(X)"), ParseError);
  CHECK_THROWS_AS(parse_expression("c1(E) +"), ParseError);
  CHECK_THROWS_AS(parse_expression("2^"), ParseError);
  CHECK_THROWS_AS(parse_expression(""), ParseError);
}

TEST_CASE("bundle resolution") {
  const DimensionSequence rho({0, 1, 3, 4});
  UniversalBundle u = resolve(parse_expression("c1(U3/U1)").bundle, rho);
  CHECK(u.ell == 1);
  CHECK(u.l == 3);
  CHECK(u.rank == 3);
  u = resolve(parse_expression("c1(U2)").bundle, rho);
  CHECK(u.ell == 0);
  CHECK(u.rank == 3);
  u = resolve(parse_expression("c1(E)").bundle, rho);
  CHECK(u.rank == 4);
  u = resolve(parse_expression("c1(Q2)").bundle, DimensionSequence::grassmannian(2, 5));
  CHECK(u.ell == 1);
  CHECK(u.l == 2);
  CHECK(u.rank == 3);
}

TEST_CASE("print and parse round trip on random expressions") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string text = random_expr(rng, 3);
    const Expr once = parse_expression(text);
    const Expr twice = parse_expression(to_string(once));
    CHECK(to_string(twice) == to_string(once));
    CHECK(twice == once);
  }
}

TEST_CASE("weighted degree") {
  CHECK(homogeneous_degree(parse_expression("c1(E)^2 - 3*c2(E)")) == 2);
  CHECK_FALSE(homogeneous_degree(parse_expression("c1(E) + c2(E)")).has_value());
  CHECK(homogeneous_degree(parse_expression("5")) == 0);
}
