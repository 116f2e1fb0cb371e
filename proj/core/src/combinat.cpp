#include "flagforms/combinat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace flagforms {

DimensionSequence::DimensionSequence(std::vector<int> rho) : rho_(std::move(rho)) {
  if (rho_.size() < 2) throw std::invalid_argument("dimension sequence needs at least two entries");
  if (rho_.front() != 0) throw std::invalid_argument("dimension sequence must start at 0");
  for (std::size_t i = 1; i < rho_.size(); ++i) {
    if (rho_[i] <= rho_[i - 1]) {
      throw std::invalid_argument("dimension sequence must be strictly increasing");
    }
  }
}

DimensionSequence DimensionSequence::complete(int r) {
  if (r < 1) throw std::invalid_argument("rank must be positive");
  std::vector<int> rho(static_cast<std::size_t>(r) + 1);
  std::iota(rho.begin(), rho.end(), 0);
  return DimensionSequence(std::move(rho));
}

DimensionSequence DimensionSequence::grassmannian(int s, int r) {
  return DimensionSequence({0, s, r});
}

std::pair<int, int> DimensionSequence::block_range(int ell, int l) const {
  if (ell < 0 || l > length() || ell >= l) {
    throw std::invalid_argument("universal bundle indices must satisfy 0 <= ell < l <= m");
  }
  return {rank() - (*this)[l] + 1, rank() - (*this)[ell]};
}

int DimensionSequence::block_of(int i) const {
  if (i < 1 || i > rank()) throw std::out_of_range("root index out of range");
  for (int ell = 1; ell <= length(); ++ell) {
    if (i > rank() - (*this)[ell]) return ell;
  }
  throw std::logic_error("unreachable: root index not in any block");
}

bool is_partition(const std::vector<int>& parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0) return false;
    if (i > 0 && parts[i] > parts[i - 1]) return false;
  }
  return true;
}

Partition normalize(Partition sigma) {
  if (!is_partition(sigma)) throw std::invalid_argument("not a partition");
  while (!sigma.empty() && sigma.back() == 0) sigma.pop_back();
  return sigma;
}

int weight(const std::vector<int>& seq) { return std::accumulate(seq.begin(), seq.end(), 0); }

Partition conjugate(const Partition& sigma) {
  const Partition s = normalize(sigma);
  if (s.empty()) return {};
  Partition out(static_cast<std::size_t>(s.front()), 0);
  for (int part : s) {
    for (int j = 0; j < part; ++j) ++out[static_cast<std::size_t>(j)];
  }
  return out;
}

namespace {

void partitions_rec(int remaining, int max_part, Partition& prefix, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    prefix.push_back(p);
    partitions_rec(remaining - p, p, prefix, out);
    prefix.pop_back();
  }
}

void compositions_rec(int remaining, std::size_t pos, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    compositions_rec(remaining - e, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<Partition> partitions(int k, int max_part) {
  std::vector<Partition> out;
  if (k < 0) return out;
  Partition prefix;
  partitions_rec(k, max_part, prefix, out);
  return out;
}

IntSequence padded_conjugate(const Partition& sigma, int r) {
  const Partition s = normalize(sigma);
  if (!s.empty() && s.front() > r) {
    throw std::invalid_argument("partition has a part larger than the rank " + std::to_string(r));
  }
  IntSequence out = conjugate(s);
  out.resize(static_cast<std::size_t>(r), 0);
  return out;
}

IntSequence flag_exponents_from_conjugate(const IntSequence& padded) {
  const int r = static_cast<int>(padded.size());
  IntSequence lambda(padded.size());
  for (int j = 1; j <= r; ++j) {
    lambda[static_cast<std::size_t>(j - 1)] = padded[static_cast<std::size_t>(r - j)] + j - 1;
  }
  return lambda;
}

IntSequence fiber_shift(const DimensionSequence& rho) {
  const int r = rho.rank();
  IntSequence nu(static_cast<std::size_t>(r));
  for (int i = 1; i <= r; ++i) nu[static_cast<std::size_t>(i - 1)] = r - rho[rho.block_of(i)];
  return nu;
}

std::vector<std::pair<int, int>> chart_pairs(const DimensionSequence& rho) {
  std::vector<std::pair<int, int>> out;
  const int r = rho.rank();
  for (int lam = 1; lam <= r; ++lam) {
    for (int mu = lam + 1; mu <= r; ++mu) {
      if (rho.block_of(lam) != rho.block_of(mu)) out.emplace_back(lam, mu);
    }
  }
  return out;
}

int relative_dimension(const DimensionSequence& rho) {
  return static_cast<int>(chart_pairs(rho).size());
}

IntSequence reversed(IntSequence seq) {
  std::reverse(seq.begin(), seq.end());
  return seq;
}

IntSequence difference(const IntSequence& a, const IntSequence& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sequence lengths differ");
  IntSequence out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::vector<DimensionSequence> all_dimension_sequences(int r) {
  std::vector<DimensionSequence> out;
  const int interior = r - 1;
  for (unsigned mask = 0; mask < (1U << interior); ++mask) {
    std::vector<int> rho{0};
    for (int i = 1; i <= interior; ++i) {
      if (mask & (1U << (interior - i))) rho.push_back(i);
    }
    rho.push_back(r);
    out.emplace_back(std::move(rho));
  }
  std::sort(out.begin(), out.end(), [](const DimensionSequence& a, const DimensionSequence& b) {
    return a.values() < b.values();
  });
  return out;
}

std::vector<std::vector<int>> compositions(int d, int n) {
  std::vector<std::vector<int>> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  if (d < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  compositions_rec(d, 0, cur, out);
  return out;
}

}  // namespace flagforms
