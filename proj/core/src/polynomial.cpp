#include "flagforms/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace flagforms {

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& value) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), value);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw std::out_of_range("variable index out of range");
  Exponents e(num_vars, 0);
  e[index] = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponents exps, const Rational& coeff) {
  Polynomial p(exps.size());
  p.add_term(exps, coeff);
  return p;
}

Rational Polynomial::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& exps, const Rational& coeff) {
  if (exps.size() != num_vars_) throw std::invalid_argument("exponent vector has wrong length");
  if (std::any_of(exps.begin(), exps.end(), [](int e) { return e < 0; })) {
    throw std::invalid_argument("negative exponent");
  }
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.num_vars_ != num_vars_) throw std::invalid_argument("arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.num_vars_ != num_vars_) throw std::invalid_argument("arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("arity mismatch");
  Polynomial out(a.num_vars_);
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(num_vars_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

int Polynomial::weighted_degree(const Exponents& exps, std::span<const int> weights) {
  int d = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) d += weights[i] * exps[i];
  return d;
}

std::optional<int> Polynomial::homogeneous_degree(std::span<const int> weights) const {
  std::optional<int> deg;
  for (const auto& [e, c] : terms_) {
    const int d = weighted_degree(e, weights);
    if (!deg) {
      deg = d;
    } else if (*deg != d) {
      return std::nullopt;
    }
  }
  return deg;
}

bool Polynomial::is_homogeneous(std::span<const int> weights) const {
  return is_zero() || homogeneous_degree(weights).has_value();
}

Polynomial Polynomial::permuted(std::span<const int> perm) const {
  if (perm.size() != num_vars_) throw std::invalid_argument("permutation has wrong length");
  Polynomial out(num_vars_);
  Exponents e(num_vars_);
  for (const auto& [ea, c] : terms_) {
    for (std::size_t i = 0; i < num_vars_; ++i) e[static_cast<std::size_t>(perm[i])] = ea[i];
    out.add_term(e, c);
  }
  return out;
}

Polynomial Polynomial::divide_by_difference(std::size_t i, std::size_t j) const {
  if (i >= num_vars_ || j >= num_vars_ || i == j) {
    throw std::invalid_argument("bad variable pair for division");
  }
  // Bucket the remainder by the exponent of x_i and peel from the top:
  // c x^e = c x^{e-u_i} (x_i - x_j) + c x^{e-u_i+u_j}.
  int top = 0;
  for (const auto& [e, c] : terms_) top = std::max(top, e[i]);
  std::vector<Polynomial> buckets(static_cast<std::size_t>(top) + 1, Polynomial(num_vars_));
  for (const auto& [e, c] : terms_) buckets[static_cast<std::size_t>(e[i])].add_term(e, c);

  Polynomial quotient(num_vars_);
  for (int k = top; k >= 1; --k) {
    for (const auto& [e, c] : buckets[static_cast<std::size_t>(k)].terms()) {
      Exponents q = e;
      q[i] -= 1;
      quotient.add_term(q, c);
      q[j] += 1;
      buckets[static_cast<std::size_t>(k - 1)].add_term(q, c);
    }
  }
  if (!buckets[0].is_zero()) {
    throw std::domain_error("polynomial is not divisible by the requested linear factor");
  }
  return quotient;
}

std::vector<std::pair<Exponents, Rational>> Polynomial::ordered_terms(std::span<const int> weights) const {
  std::vector<std::pair<Exponents, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    const int da = weighted_degree(a.first, weights);
    const int db = weighted_degree(b.first, weights);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  return out;
}

std::string Polynomial::to_string(std::string_view var_prefix, std::span<const int> weights) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered_terms(weights)) {
    const bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::string f = std::string(var_prefix) + std::to_string(i + 1);
      if (e[i] > 1) f += "^" + std::to_string(e[i]);
      factors.push_back(std::move(f));
    }
    if (factors.empty()) {
      os << flagforms::to_string(mag);
      continue;
    }
    if (mag != 1) os << flagforms::to_string(mag) << '*';
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k > 0) os << '*';
      os << factors[k];
    }
  }
  return os.str();
}

}  // namespace flagforms
