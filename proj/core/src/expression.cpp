#include "flagforms/expression.hpp"

#include <cctype>
#include <limits>

namespace flagforms {

std::string BundleRef::to_string() const {
  switch (kind) {
    case Kind::Ambient:
      return "E";
    case Kind::Sub:
      return "U" + std::to_string(a);
    case Kind::Quotient:
      return "U" + std::to_string(a) + "/U" + std::to_string(b);
    case Kind::Grassmann:
      return "Q" + std::to_string(a);
  }
  return "?";
}

UniversalBundle resolve(const BundleRef& bundle, const DimensionSequence& rho) {
  const int m = rho.length();
  UniversalBundle u;
  switch (bundle.kind) {
    case BundleRef::Kind::Ambient:
      u = {0, m, 0};
      break;
    case BundleRef::Kind::Sub:
      if (bundle.a < 1 || bundle.a > m) {
        throw std::invalid_argument("unknown bundle " + bundle.to_string() + ": index must lie in 1.." +
                                    std::to_string(m));
      }
      u = {0, bundle.a, 0};
      break;
    case BundleRef::Kind::Quotient:
      if (bundle.b < 0 || bundle.a > m || bundle.b >= bundle.a) {
        throw std::invalid_argument("unknown bundle " + bundle.to_string() +
                                    ": need 0 <= denominator < numerator <= " + std::to_string(m));
      }
      u = {bundle.b, bundle.a, 0};
      break;
    case BundleRef::Kind::Grassmann:
      if (m != 2 || rho[1] != bundle.a) {
        throw std::invalid_argument("unknown bundle " + bundle.to_string() +
                                    ": Q" + std::to_string(bundle.a) + " needs rho = (0," +
                                    std::to_string(bundle.a) + ",r)");
      }
      u = {1, 2, 0};
      break;
  }
  u.rank = rho[u.l] - rho[u.ell];
  return u;
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

Expr Expr::number(Rational v) {
  Expr e;
  e.kind = Kind::Number;
  e.value = std::move(v);
  return e;
}

Expr Expr::chern(int j, BundleRef b) {
  Expr e;
  e.kind = Kind::Chern;
  e.index = j;
  e.bundle = b;
  return e;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    if (pos_ >= text_.size()) throw ParseError(msg + " (end of input)", pos_);
    throw ParseError(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  int nat() {
    const std::size_t start = pos_;
    const std::string d = digits();
    if (d.size() > 6) {
      pos_ = start;
      fail("integer too large");
    }
    return std::stoi(d);
  }

  Expr expr() {
    Expr sum;
    sum.kind = Expr::Kind::Sum;
    bool neg = accept('-');
    for (;;) {
      sum.children.push_back(term());
      sum.subtracted.push_back(neg);
      if (accept('+')) {
        neg = false;
      } else if (accept('-')) {
        neg = true;
      } else {
        break;
      }
    }
    if (sum.children.size() == 1 && !sum.subtracted.front()) return std::move(sum.children.front());
    return sum;
  }

  Expr term() {
    Expr prod;
    prod.kind = Expr::Kind::Product;
    prod.children.push_back(factor());
    while (accept('*')) prod.children.push_back(factor());
    if (prod.children.size() == 1) return std::move(prod.children.front());
    return prod;
  }

  Expr factor() {
    Expr base = atom();
    if (accept('^')) {
      Expr p;
      p.kind = Expr::Kind::Power;
      p.exponent = static_cast<unsigned>(nat());
      p.children.push_back(std::move(base));
      return p;
    }
    return base;
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected an operand");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string lit = digits();
      // A slash directly followed by a digit continues the rational literal.
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
        lit += "/" + digits();
      }
      const std::size_t at = pos_;
      try {
        return Expr::number(parse_rational(lit));
      } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what(), at);
      }
    }
    if (ch == 'c') {
      ++pos_;
      const int j = nat();
      BundleRef b;
      if (accept('(')) {
        b = bundle();
        expect(')');
      }
      return Expr::chern(j, b);
    }
    fail("expected an operand");
  }

  BundleRef bundle() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a bundle");
    const char ch = text_[pos_];
    BundleRef b;
    if (ch == 'E') {
      ++pos_;
      b.kind = BundleRef::Kind::Ambient;
    } else if (ch == 'Q') {
      ++pos_;
      b.kind = BundleRef::Kind::Grassmann;
      b.a = nat();
    } else if (ch == 'U') {
      ++pos_;
      b.kind = BundleRef::Kind::Sub;
      b.a = nat();
      if (accept('/')) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'U') fail("expected 'U' after '/'");
        ++pos_;
        b.kind = BundleRef::Kind::Quotient;
        b.b = nat();
      }
    } else {
      fail("unknown bundle symbol '" + std::string(1, ch) + "'");
    }
    return b;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool needs_parens_in_product(const Expr& e) {
  return e.kind == Expr::Kind::Sum || e.kind == Expr::Kind::Negate ||
         (e.kind == Expr::Kind::Number && e.value < 0);
}

bool needs_parens_in_power(const Expr& e) {
  return e.kind != Expr::Kind::Chern && !(e.kind == Expr::Kind::Number && e.value >= 0 && e.value.get_den() == 1);
}

// Degree bookkeeping: nullopt = wildcard (zero), -1 sentinel = inhomogeneous.
constexpr int kInhomogeneous = std::numeric_limits<int>::min();

std::optional<int> degree_rec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      if (e.value == 0) return std::nullopt;
      return 0;
    case Expr::Kind::Chern:
      return e.index;
    case Expr::Kind::Sum: {
      std::optional<int> d;
      for (const Expr& c : e.children) {
        auto dc = degree_rec(c);
        if (!dc) continue;
        if (*dc == kInhomogeneous) return kInhomogeneous;
        if (d && *d != *dc) return kInhomogeneous;
        d = dc;
      }
      return d;
    }
    case Expr::Kind::Product: {
      int total = 0;
      for (const Expr& c : e.children) {
        auto dc = degree_rec(c);
        if (!dc) return std::nullopt;
        if (*dc == kInhomogeneous) return kInhomogeneous;
        total += *dc;
      }
      return total;
    }
    case Expr::Kind::Power: {
      auto dc = degree_rec(e.children.front());
      if (e.exponent == 0) return 0;
      if (!dc || *dc == kInhomogeneous) return dc;
      return *dc * static_cast<int>(e.exponent);
    }
    case Expr::Kind::Negate:
      return degree_rec(e.children.front());
  }
  return kInhomogeneous;
}

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return flagforms::to_string(e.value);
    case Expr::Kind::Chern:
      return "c" + std::to_string(e.index) + "(" + e.bundle.to_string() + ")";
    case Expr::Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        const Expr& c = e.children[i];
        std::string s = to_string(c);
        if (c.kind == Expr::Kind::Sum || c.kind == Expr::Kind::Negate ||
            (c.kind == Expr::Kind::Number && c.value < 0)) {
          s = "(" + s + ")";
        }
        if (i == 0) {
          out += e.subtracted[i] ? "-" + s : s;
        } else {
          out += e.subtracted[i] ? " - " + s : " + " + s;
        }
      }
      return out;
    }
    case Expr::Kind::Product: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += "*";
        const Expr& c = e.children[i];
        out += needs_parens_in_product(c) ? "(" + to_string(c) + ")" : to_string(c);
      }
      return out;
    }
    case Expr::Kind::Power: {
      const Expr& c = e.children.front();
      const std::string base = needs_parens_in_power(c) ? "(" + to_string(c) + ")" : to_string(c);
      return base + "^" + std::to_string(e.exponent);
    }
    case Expr::Kind::Negate:
      return "-(" + to_string(e.children.front()) + ")";
  }
  return "?";
}

void validate(const Expr& e, const DimensionSequence& rho) {
  if (e.kind == Expr::Kind::Chern) {
    const UniversalBundle u = resolve(e.bundle, rho);
    if (e.index > u.rank) {
      throw std::invalid_argument("c" + std::to_string(e.index) + "(" + e.bundle.to_string() +
                                  ") is out of range: rank of " + e.bundle.to_string() + " is " +
                                  std::to_string(u.rank));
    }
  }
  for (const Expr& c : e.children) validate(c, rho);
}

std::optional<int> homogeneous_degree(const Expr& e) {
  auto d = degree_rec(e);
  if (d && *d == kInhomogeneous) return std::nullopt;
  return d ? d : std::optional<int>(0);
}

}  // namespace flagforms
