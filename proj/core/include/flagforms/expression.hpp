#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flagforms/combinat.hpp"
#include "flagforms/rational.hpp"

namespace flagforms {

// A bundle symbol as written: E, U<l>, U<a>/U<b>, or Q<s>.
struct BundleRef {
  enum class Kind { Ambient, Sub, Quotient, Grassmann };
  Kind kind = Kind::Ambient;
  int a = 0;  // l for Sub, numerator for Quotient, s for Grassmann
  int b = 0;  // denominator for Quotient

  std::string to_string() const;
  bool operator==(const BundleRef&) const = default;
};

// Universal bundle U_l / U_ell, resolved against a dimension sequence.
struct UniversalBundle {
  int ell = 0;
  int l = 0;
  int rank = 0;
};

// Resolves a bundle symbol. Q<s> is accepted only for rho = (0,s,r) and
// names U_2/U_1. Throws std::invalid_argument for anything else.
UniversalBundle resolve(const BundleRef& bundle, const DimensionSequence& rho);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Expr {
  enum class Kind { Number, Chern, Sum, Product, Power, Negate };
  Kind kind = Kind::Number;
  Rational value;                // Number
  int index = 0;                 // Chern class index j
  BundleRef bundle;              // Chern
  unsigned exponent = 0;         // Power
  std::vector<Expr> children;    // Sum, Product, Power (1), Negate (1)
  std::vector<bool> subtracted;  // Sum: sign of each child

  static Expr number(Rational v);
  static Expr chern(int j, BundleRef b);

  bool operator==(const Expr&) const = default;
};

// Grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nat)?
//   atom   := rational | 'c' nat ['(' bundle ')'] | '(' expr ')'
//   bundle := 'E' | 'U' nat | 'U' nat '/' 'U' nat | 'Q' nat
// A bare `c<j>` means c_j(E).
Expr parse_expression(std::string_view text);

std::string to_string(const Expr& e);

// Checks every Chern index against the rank of its resolved bundle.
void validate(const Expr& e, const DimensionSequence& rho);

// Weighted degree (c_j has weight j) if the expression is homogeneous;
// nullopt otherwise. The zero number is treated as homogeneous of any
// degree and reported as nullopt only when nothing else fixes the degree.
std::optional<int> homogeneous_degree(const Expr& e);

// Generic evaluation into any ring. `leaf` maps (j, bundle) to c_j(bundle);
// `constant` embeds rationals.
template <class Ring, class Leaf, class Constant>
Ring evaluate(const Expr& e, Leaf&& leaf, Constant&& constant) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return constant(e.value);
    case Expr::Kind::Chern:
      return leaf(e.index, e.bundle);
    case Expr::Kind::Sum: {
      Ring acc = constant(Rational(0));
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        Ring v = evaluate<Ring>(e.children[i], leaf, constant);
        acc = e.subtracted[i] ? acc - v : acc + v;
      }
      return acc;
    }
    case Expr::Kind::Product: {
      Ring acc = constant(Rational(1));
      for (const Expr& c : e.children) acc = acc * evaluate<Ring>(c, leaf, constant);
      return acc;
    }
    case Expr::Kind::Power: {
      Ring base = evaluate<Ring>(e.children.front(), leaf, constant);
      Ring acc = constant(Rational(1));
      for (unsigned i = 0; i < e.exponent; ++i) acc = acc * base;
      return acc;
    }
    case Expr::Kind::Negate:
      return constant(Rational(0)) - evaluate<Ring>(e.children.front(), leaf, constant);
  }
  throw std::logic_error("unknown expression node");
}

}  // namespace flagforms
