#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flagforms/rational.hpp"

namespace flagforms {

using Exponents = std::vector<int>;

// Sparse multivariate polynomial with exact rational coefficients.
// Invariant: no stored coefficient is zero and every exponent vector has
// exactly num_vars() non-negative entries.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& value);
  static Polynomial variable(std::size_t num_vars, std::size_t index);
  static Polynomial monomial(Exponents exps, const Rational& coeff = 1);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponents& exps) const;
  void add_term(const Exponents& exps, const Rational& coeff);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned exponent) const;

  // Weighted degree sum_i weights[i] * e[i] of one exponent vector.
  static int weighted_degree(const Exponents& exps, std::span<const int> weights);

  // Common weighted degree of all terms; nullopt for the zero polynomial or
  // when the terms disagree.
  std::optional<int> homogeneous_degree(std::span<const int> weights) const;
  bool is_homogeneous(std::span<const int> weights) const;

  // Variable i is renamed to variable perm[i].
  Polynomial permuted(std::span<const int> perm) const;

  // Exact quotient by (x_i - x_j). Throws std::domain_error when the
  // division leaves a remainder.
  Polynomial divide_by_difference(std::size_t i, std::size_t j) const;

  // Terms sorted by weighted degree (descending) then lexicographically
  // descending; the fixed order used for printing and serialization.
  std::vector<std::pair<Exponents, Rational>> ordered_terms(std::span<const int> weights) const;

  // Human-readable form, e.g. "c1^3 + 2*c1*c2 - c3" with prefix "c".
  std::string to_string(std::string_view var_prefix, std::span<const int> weights) const;

 private:
  std::size_t num_vars_;
  TermMap terms_;
};

// Typed wrapper that fixes the variable weights and printing prefix.
// Tag must provide `static int weight(std::size_t index)` and
// `static constexpr const char* prefix`.
template <class Tag>
class GradedPoly {
 public:
  explicit GradedPoly(int rank = 0) : rank_(rank), poly_(static_cast<std::size_t>(rank)) {}
  GradedPoly(int rank, Polynomial poly) : rank_(rank), poly_(std::move(poly)) {
    if (poly_.num_vars() != static_cast<std::size_t>(rank)) {
      throw std::invalid_argument("polynomial arity does not match rank");
    }
  }

  static GradedPoly constant(int rank, const Rational& value) {
    return GradedPoly(rank, Polynomial::constant(static_cast<std::size_t>(rank), value));
  }
  static GradedPoly zero(int rank) { return GradedPoly(rank); }
  static GradedPoly one(int rank) { return constant(rank, 1); }
  // Variable with 1-based index (c_j or xi_j).
  static GradedPoly var(int rank, int index) {
    if (index < 1 || index > rank) throw std::out_of_range("variable index out of range");
    return GradedPoly(rank, Polynomial::variable(static_cast<std::size_t>(rank),
                                                 static_cast<std::size_t>(index - 1)));
  }
  static GradedPoly monomial(Exponents exps, const Rational& coeff = 1) {
    const int r = static_cast<int>(exps.size());
    return GradedPoly(r, Polynomial::monomial(std::move(exps), coeff));
  }

  int rank() const { return rank_; }
  const Polynomial& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }
  Rational coefficient(const Exponents& e) const { return poly_.coefficient(e); }

  std::vector<int> weights() const {
    std::vector<int> w(static_cast<std::size_t>(rank_));
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = Tag::weight(i);
    return w;
  }
  std::optional<int> degree() const { return poly_.homogeneous_degree(weights()); }
  bool is_homogeneous() const { return poly_.is_homogeneous(weights()); }
  bool is_homogeneous_of(int k) const {
    if (is_zero()) return true;
    auto d = degree();
    return d && *d == k;
  }

  GradedPoly& operator+=(const GradedPoly& o) { check(o); poly_ += o.poly_; return *this; }
  GradedPoly& operator-=(const GradedPoly& o) { check(o); poly_ -= o.poly_; return *this; }
  GradedPoly& operator*=(const GradedPoly& o) { check(o); poly_ *= o.poly_; return *this; }
  GradedPoly& operator*=(const Rational& s) { poly_ *= s; return *this; }
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const GradedPoly& b) { return a *= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational& s) { return a *= s; }
  friend GradedPoly operator*(const Rational& s, GradedPoly a) { return a *= s; }
  friend GradedPoly operator-(GradedPoly a) { return a *= Rational(-1); }
  friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return a.rank_ == b.rank_ && a.poly_ == b.poly_;
  }

  GradedPoly pow(unsigned e) const { return GradedPoly(rank_, poly_.pow(e)); }

  std::vector<std::pair<Exponents, Rational>> ordered_terms() const {
    return poly_.ordered_terms(weights());
  }
  std::string to_string() const { return poly_.to_string(Tag::prefix, weights()); }

 private:
  void check(const GradedPoly& o) const {
    if (o.rank_ != rank_) throw std::invalid_argument("rank mismatch in polynomial arithmetic");
  }

  int rank_;
  Polynomial poly_;
};

}  // namespace flagforms
