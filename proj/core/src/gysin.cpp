#include "flagforms/gysin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace flagforms {

namespace {

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

Polynomial vandermonde_divide(Polynomial p) {
  const std::size_t r = p.num_vars();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) p = p.divide_by_difference(i, j);
  }
  return p;
}

RootPoly reference_monomial(const DimensionSequence& rho) {
  return RootPoly::monomial(fiber_shift(rho));
}

}  // namespace

DeterminantalPushforward::DeterminantalPushforward(DimensionSequence rho)
    : rho_(std::move(rho)), nu_(fiber_shift(rho_)), cache_(rho_.rank()) {}

ChernPoly DeterminantalPushforward::push(const RootPoly& f) {
  const int r = rho_.rank();
  if (f.rank() != r) throw std::invalid_argument("root polynomial rank does not match rho");
  ChernPoly out = ChernPoly::zero(r);
  for (const auto& [lambda, b] : f.poly().terms()) {
    const IntSequence seq = reversed(difference(lambda, nu_));
    if (weight(seq) < 0) continue;
    const ChernPoly& s = cache_.get(seq);
    if (!s.is_zero()) out += s * b;
  }
  return out;
}

ChernPoly DeterminantalPushforward::push(const RootPoly& f, std::vector<std::string>& warnings) {
  if (!is_block_symmetric(f, rho_)) {
    warnings.emplace_back(
        "input is not symmetric within the root blocks; the determinantal formula was applied "
        "term by term");
  }
  return push(f);
}

ChernPoly pushforward_determinantal(const RootPoly& f, const DimensionSequence& rho) {
  DeterminantalPushforward engine(rho);
  return engine.push(f);
}

ChernPoly symmetric_to_chern(const Polynomial& p) {
  const std::size_t r = p.num_vars();
  std::vector<std::size_t> all(r);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<Polynomial> e;
  for (std::size_t j = 1; j <= r; ++j) e.push_back(elementary_symmetric(r, all, static_cast<int>(j)));
  std::map<std::pair<std::size_t, int>, Polynomial> powers;
  auto power = [&](std::size_t j, int k) -> const Polynomial& {
    auto key = std::make_pair(j, k);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, e[j].pow(static_cast<unsigned>(k))).first;
    return it->second;
  };

  const int rank = static_cast<int>(r);
  ChernPoly out = ChernPoly::zero(rank);
  Polynomial rest = p;
  while (!rest.is_zero()) {
    const auto& [lead, coeff] = *rest.terms().rbegin();
    Exponents cexp(r, 0);
    int total = 0;
    for (std::size_t j = 0; j < r; ++j) {
      const int next = j + 1 < r ? lead[j + 1] : 0;
      if (lead[j] < next) throw std::domain_error("polynomial is not symmetric");
      cexp[j] = lead[j] - next;
      total += lead[j];
    }
    const Rational c = coeff;
    Polynomial prod = Polynomial::constant(r, c);
    for (std::size_t j = 0; j < r; ++j) {
      if (cexp[j] > 0) prod *= power(j, cexp[j]);
    }
    rest -= prod;
    out += ChernPoly::monomial(cexp, total % 2 == 0 ? c : Rational(-c));
  }
  return out;
}

SymmetrizerOracle::SymmetrizerOracle(DimensionSequence rho)
    : rho_(std::move(rho)),
      within_vandermonde_(Polynomial::constant(static_cast<std::size_t>(rho_.rank()), 1)),
      fiber_class_(static_cast<std::size_t>(rho_.rank())) {
  const int r = rho_.rank();
  if (r > kMaxRank) {
    throw std::invalid_argument("symmetrizer oracle supports rank <= " + std::to_string(kMaxRank));
  }
  const auto n = static_cast<std::size_t>(r);

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    all_perms_.push_back(perm);
    all_signs_.push_back(permutation_sign(perm));
    bool minimal = true;
    for (int i = 1; i < r && minimal; ++i) {
      if (rho_.block_of(i) == rho_.block_of(i + 1) &&
          perm[static_cast<std::size_t>(i - 1)] > perm[static_cast<std::size_t>(i)]) {
        minimal = false;
      }
    }
    if (minimal) {
      cosets_.push_back(perm);
      coset_signs_.push_back(all_signs_.back());
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  Exponents fiber(n, 0);
  for (int i = 1; i <= r; ++i) {
    const int first = rho_.block_range(rho_.block_of(i) - 1, rho_.block_of(i)).first;
    fiber[static_cast<std::size_t>(i - 1)] = i - first;
    for (int j = i + 1; j <= r; ++j) {
      if (rho_.block_of(i) != rho_.block_of(j)) continue;
      within_vandermonde_ *= Polynomial::variable(n, static_cast<std::size_t>(i - 1)) -
                             Polynomial::variable(n, static_cast<std::size_t>(j - 1));
    }
  }
  fiber_class_ = Polynomial::monomial(fiber);

  // The determinantal formula sends xi^nu to 1; fix both route signs there.
  const RootPoly ref = reference_monomial(rho_);
  const ChernPoly target = pushforward_determinantal(ref, rho_);
  for (Route route : {Route::Coset, Route::CompleteFlag}) {
    const ChernPoly value = raw(ref, route);
    int sign = 0;
    if (value == target) sign = 1;
    if (value == -target) sign = -1;
    if (sign == 0) throw std::logic_error("symmetrizer calibration failed on the reference monomial");
    (route == Route::Coset ? coset_sign_ : complete_sign_) = sign;
  }
}

SymmetrizerOracle::Route SymmetrizerOracle::route_for(const RootPoly& f) const {
  return is_block_symmetric(f, rho_) ? Route::Coset : Route::CompleteFlag;
}

int SymmetrizerOracle::calibration_sign(Route route) const {
  return route == Route::Coset ? coset_sign_ : complete_sign_;
}

ChernPoly SymmetrizerOracle::raw(const RootPoly& f, Route route) const {
  const int r = rho_.rank();
  if (f.rank() != r) throw std::invalid_argument("root polynomial rank does not match rho");
  const bool coset = route == Route::Coset;
  const Polynomial seed = f.poly() * (coset ? within_vandermonde_ : fiber_class_);
  const auto& perms = coset ? cosets_ : all_perms_;
  const auto& signs = coset ? coset_signs_ : all_signs_;

  Polynomial alternant(static_cast<std::size_t>(r));
  for (std::size_t k = 0; k < perms.size(); ++k) {
    Polynomial moved = seed.permuted(perms[k]);
    if (signs[k] < 0) moved *= Rational(-1);
    alternant += moved;
  }
  if (alternant.is_zero()) return ChernPoly::zero(r);
  return symmetric_to_chern(vandermonde_divide(std::move(alternant)));
}

ChernPoly SymmetrizerOracle::push(const RootPoly& f) const {
  const Route route = route_for(f);
  return raw(f, route) * Rational(calibration_sign(route));
}

ChernPoly pushforward_symmetrizer(const RootPoly& f, const DimensionSequence& rho) {
  return SymmetrizerOracle(rho).push(f);
}

FlagSchurResult schur_from_complete_flag(const Partition& sigma, int r) {
  const Partition s = normalize(sigma);
  FlagSchurResult res;
  res.padded = padded_conjugate(s, r);
  res.lambda = flag_exponents_from_conjugate(res.padded);

  // prod_j Xi_j^{lambda_j} with Xi_j = -xi_{r-j+1}
  Exponents exps(static_cast<std::size_t>(r), 0);
  for (int j = 1; j <= r; ++j) {
    exps[static_cast<std::size_t>(r - j)] = res.lambda[static_cast<std::size_t>(j - 1)];
  }
  const int lam = weight(res.lambda);
  const int sign_total = (lam + weight(s) + lam) % 2 == 0 ? 1 : -1;
  const RootPoly integrand = RootPoly::monomial(exps, Rational(sign_total));

  res.value = pushforward_determinantal(integrand, DimensionSequence::complete(r));
  const ChernPoly schur = schur_polynomial(s, r);
  if (res.value == schur) {
    res.epsilon = 1;
  } else if (res.value == -schur) {
    res.epsilon = -1;
  } else {
    throw std::logic_error("push-forward is not a signed Schur polynomial");
  }
  return res;
}

int flag_sign(int r, int max_k) {
  int eps = 0;
  for (int k = 0; k <= max_k; ++k) {
    for (const Partition& sigma : partitions(k, r)) {
      const int e = schur_from_complete_flag(sigma, r).epsilon;
      if (eps == 0) eps = e;
      if (e != eps) throw std::logic_error("sign of the flag push-forward depends on the partition");
    }
  }
  return eps;
}

GrassmannPushforward grassmann_quotient_pushforward(int r, int n, int s, int alpha, int beta) {
  if (s < 1 || s >= r) throw std::invalid_argument("need 1 <= s < r");
  if (n < 0 || alpha < 0) throw std::invalid_argument("alpha and n must be non-negative");
  if (beta < 0 || beta > 2) throw std::invalid_argument("need 0 <= beta <= 2");
  const int d = s * (r - s);
  const int total = alpha + 2 * beta;
  if (total < d || total > n + d) {
    throw std::invalid_argument("need s(r-s) <= alpha + 2 beta <= n + s(r-s)");
  }
  const DimensionSequence rho = DimensionSequence::grassmannian(s, r);
  const auto classes = universal_chern_classes(rho, 1, 2);
  const RootPoly c1 = classes[1];
  const RootPoly c2 = classes.size() > 2 ? classes[2] : RootPoly::zero(r);

  GrassmannPushforward out;
  out.integrand = c1.pow(static_cast<unsigned>(alpha)) * c2.pow(static_cast<unsigned>(beta));
  out.value = pushforward_determinantal(out.integrand, rho);
  out.schur = decompose_in_schur_basis(out.value, total - d);
  for (const auto& [sigma, c] : out.schur.coords) {
    if (c < 0) throw std::logic_error("negative Schur coordinate in Grassmannian push-forward");
  }
  return out;
}

}  // namespace flagforms
