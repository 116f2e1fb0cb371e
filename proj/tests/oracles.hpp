#pragma once

// Independent numeric reference computations used by the tests. Nothing here
// calls into the symbolic engine.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = std::vector<double>;

// e_0..e_r of the values x.
inline Vec elementary(const Vec& x) {
  Vec e(x.size() + 1, 0.0);
  e[0] = 1.0;
  for (double v : x) {
    for (std::size_t j = x.size(); j >= 1; --j) e[j] += v * e[j - 1];
  }
  return e;
}

// Schur function s_lambda(x) as the bialternant a_{lambda+delta} / a_delta.
inline double schur_bialternant(std::vector<int> lambda, const Vec& x) {
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(lambda.size()) > n) {
    for (std::size_t i = static_cast<std::size_t>(n); i < lambda.size(); ++i) {
      if (lambda[i] != 0) return 0.0;
    }
  }
  lambda.resize(static_cast<std::size_t>(n), 0);
  Eigen::MatrixXd num(n, n), den(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      num(i, j) = std::pow(x[static_cast<std::size_t>(j)], lambda[static_cast<std::size_t>(i)] + n - 1 - i);
      den(i, j) = std::pow(x[static_cast<std::size_t>(j)], n - 1 - i);
    }
  }
  return num.determinant() / den.determinant();
}

inline std::vector<int> conjugate(const std::vector<int>& p) {
  std::vector<int> out;
  for (int i = 1; !p.empty() && i <= p.front(); ++i) {
    int c = 0;
    for (int v : p) c += v >= i ? 1 : 0;
    out.push_back(c);
  }
  return out;
}

// Coefficients of 1 / (1 + c_1 t + ... + c_r t^r) up to t^deg.
inline Vec series_inverse(const Vec& c, int deg) {
  Vec s(static_cast<std::size_t>(deg) + 1, 0.0);
  s[0] = 1.0;
  for (int k = 1; k <= deg; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k && j < static_cast<int>(c.size()); ++j) acc += c[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k - j)];
    s[static_cast<std::size_t>(k)] = -acc;
  }
  return s;
}

inline int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) s = -s;
    }
  }
  return s;
}

// Numeric push-forward of the monomial xi^e along a flag bundle, evaluated at
// Chern roots xi = x, by summing f / prod(cross-block differences) over all
// of S_r and dividing by the order of the block stabilizer. `block` gives the
// block index of each root.
inline double symmetrize(const std::vector<int>& e, const std::vector<int>& block, const Vec& x) {
  const std::size_t r = x.size();
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  double stabilizer = 0.0;
  do {
    Vec y(r);
    for (std::size_t i = 0; i < r; ++i) y[i] = x[static_cast<std::size_t>(perm[i])];
    double f = 1.0;
    for (std::size_t i = 0; i < r; ++i) f *= std::pow(y[i], e[i]);
    double den = 1.0;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        if (block[i] != block[j]) den *= y[i] - y[j];
      }
    }
    bool fixes_blocks = true;
    for (std::size_t i = 0; i < r; ++i) fixes_blocks = fixes_blocks && block[i] == block[static_cast<std::size_t>(perm[i])];
    if (fixes_blocks) stabilizer += 1.0;
    total += f / den;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / stabilizer;
}

}  // namespace oracle
