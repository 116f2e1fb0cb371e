#include "flagforms/charpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace flagforms {

namespace {

bool chern_is_zero(const ChernPoly& p) { return p.is_zero(); }

std::string key_of(const IntSequence& s) {
  std::string k;
  for (int v : s) {
    k += std::to_string(v);
    k += ',';
  }
  return k;
}

// Substitutes variable i -> images[i] in p.
template <class OutPoly>
OutPoly substitute(const Polynomial& p, const std::vector<OutPoly>& images, const OutPoly& one) {
  OutPoly out = one * Rational(0);
  for (const auto& [e, c] : p.terms()) {
    OutPoly term = one * c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) term *= images[i].pow(static_cast<unsigned>(e[i]));
    }
    out += term;
  }
  return out;
}

Exponents monomial_of_partition(const Partition& sigma, int r) {
  Exponents e(static_cast<std::size_t>(r), 0);
  for (int part : sigma) ++e[static_cast<std::size_t>(part - 1)];
  return e;
}

}  // namespace

Rational SchurVector::at(const Partition& sigma) const {
  const Partition key = normalize(sigma);
  for (const auto& [p, c] : coords) {
    if (p == key) return c;
  }
  throw std::out_of_range("partition is not in the Schur basis of this degree and rank");
}

std::vector<ChernPoly> segre_polynomials(int r, int max_deg) {
  if (max_deg < 0) throw std::invalid_argument("max_deg must be non-negative");
  std::vector<ChernPoly> s;
  s.reserve(static_cast<std::size_t>(max_deg) + 1);
  s.push_back(ChernPoly::one(r));
  for (int k = 1; k <= max_deg; ++k) {
    ChernPoly acc = ChernPoly::zero(r);
    for (int j = 1; j <= std::min(k, r); ++j) {
      acc -= ChernPoly::var(r, j) * s[static_cast<std::size_t>(k - j)];
    }
    s.push_back(std::move(acc));
  }
  return s;
}

ChernPoly schur_polynomial(const Partition& sigma, int r) {
  Partition s = normalize(sigma);
  const std::size_t n = s.size();
  auto entry = [&](int idx) {
    if (idx == 0) return ChernPoly::one(r);
    if (idx < 0 || idx > r) return ChernPoly::zero(r);
    return ChernPoly::var(r, idx);
  };
  std::vector<std::vector<ChernPoly>> m(n, std::vector<ChernPoly>(n, ChernPoly::zero(r)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = entry(s[i] + static_cast<int>(j) - static_cast<int>(i));
    }
  }
  return determinant(m, ChernPoly::zero(r), ChernPoly::one(r), chern_is_zero);
}

ChernPoly generalized_schur(const IntSequence& sigma, int r) {
  GeneralizedSchurCache cache(r);
  return cache.get(sigma);
}

const ChernPoly& GeneralizedSchurCache::get(const IntSequence& sigma) {
  const std::string key = key_of(sigma);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const std::size_t n = sigma.size();
  int max_idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    max_idx = std::max(max_idx, sigma[i] + static_cast<int>(n) - 1 - static_cast<int>(i));
  }
  if (static_cast<int>(segre_.size()) <= max_idx) segre_ = segre_polynomials(r_, max_idx);

  ChernPoly value = ChernPoly::zero(r_);
  if (weight(sigma) >= 0) {
    std::vector<std::vector<ChernPoly>> m(n, std::vector<ChernPoly>(n, ChernPoly::zero(r_)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const int idx = sigma[i] + static_cast<int>(j) - static_cast<int>(i);
        if (idx >= 0) m[i][j] = segre_[static_cast<std::size_t>(idx)];
      }
    }
    value = determinant(m, ChernPoly::zero(r_), ChernPoly::one(r_), chern_is_zero);
  }
  return cache_.emplace(key, std::move(value)).first->second;
}

SchurVector decompose_in_schur_basis(const ChernPoly& p, int k) {
  const int r = p.rank();
  if (!p.is_homogeneous_of(k)) {
    throw std::invalid_argument("input is not weighted-homogeneous of degree " + std::to_string(k));
  }
  const std::vector<Partition> basis = partitions(k, r);
  const std::size_t n = basis.size();

  // Row index = monomial (indexed by the same partitions), column = S_sigma.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, Rational(0)));
  for (std::size_t col = 0; col < n; ++col) {
    const ChernPoly s = schur_polynomial(basis[col], r);
    for (std::size_t row = 0; row < n; ++row) {
      a[row][col] = s.coefficient(monomial_of_partition(basis[row], r));
    }
  }
  for (std::size_t row = 0; row < n; ++row) {
    a[row][n] = p.coefficient(monomial_of_partition(basis[row], r));
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::logic_error("Schur transition matrix is singular");
    std::swap(a[pivot], a[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col] / a[col][col];
      for (std::size_t j = col; j <= n; ++j) a[row][j] -= f * a[col][j];
    }
  }

  SchurVector v{k, r, {}};
  v.coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational x = a[i][n] / a[i][i];
    x.canonicalize();
    v.coords.emplace_back(basis[i], x);
  }
  return v;
}

ChernPoly reconstruct(const SchurVector& v) {
  ChernPoly out = ChernPoly::zero(v.rank);
  for (const auto& [sigma, c] : v.coords) {
    if (c != 0) out += schur_polynomial(sigma, v.rank) * c;
  }
  return out;
}

SegrePoly to_segre(const ChernPoly& p, int max_deg) {
  const int r = p.rank();
  const int d = std::max(max_deg, 1);
  // c_k = -sum_{j=1}^{k} s_j c_{k-j}
  std::vector<SegrePoly> c;
  c.push_back(SegrePoly::one(d));
  for (int k = 1; k <= r; ++k) {
    SegrePoly acc = SegrePoly::zero(d);
    if (k <= d) {
      for (int j = 1; j <= k; ++j) acc -= SegrePoly::var(d, j) * c[static_cast<std::size_t>(k - j)];
    }
    c.push_back(std::move(acc));
  }
  std::vector<SegrePoly> images(c.begin() + 1, c.end());
  return substitute(p.poly(), images, SegrePoly::one(d));
}

ChernPoly from_segre(const SegrePoly& p, int r) {
  const auto s = segre_polynomials(r, p.rank());
  std::vector<ChernPoly> images(s.begin() + 1, s.end());
  return substitute(p.poly(), images, ChernPoly::one(r));
}

}  // namespace flagforms
