#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "flagforms/charpoly.hpp"
#include "flagforms/conegeom.hpp"
#include "flagforms/expression.hpp"
#include "flagforms/flagnum.hpp"
#include "flagforms/formlab.hpp"
#include "flagforms/gysin.hpp"
#include "flagforms/random.hpp"
#include "flagforms/rootcalc.hpp"

using namespace flagforms;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(4) << x;
  return os.str();
}

ChernPoly c(int r, int j) { return ChernPoly::var(r, j); }

// Timed criterion; a time limit of 0 means none.
bool run(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0.0 && secs > limit_seconds) {
    o.pass = false;
    o.detail += "; over time limit " + fmt(limit_seconds) + " s";
  }
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << o.detail << " (" << fmt(secs)
            << " s)" << std::endl;
  return o.pass;
}

Eigen::VectorXcd gaussian_vector(CounterRng& rng, int d, double scale) {
  Eigen::VectorXcd z(d);
  for (int p = 0; p < d; ++p) z(p) = scale * rng.complex_normal();
  return z;
}

int pick(CounterRng& rng, int lo, int hi) { return lo + static_cast<int>(rng.uniform() * (hi - lo + 1)); }

struct Config {
  DimensionSequence rho{std::vector<int>{0, 1, 2}};
  UniversalSpec spec;
  int n = 1;
  CurvatureTensor c;
};

// Random (C, rho, spec) with n, r <= 4 and at least two steps in rho.
Config random_config(std::uint64_t index) {
  CounterRng rng(kSeed, {0xc0f, index});
  Config cfg;
  const int r = pick(rng, 2, 4);
  cfg.n = pick(rng, 1, 4);
  std::vector<DimensionSequence> all = all_dimension_sequences(r);
  std::erase_if(all, [](const DimensionSequence& d) { return d.length() < 2; });
  cfg.rho = all[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(all.size()) - 1))];
  cfg.spec.l = pick(rng, 1, cfg.rho.length());
  cfg.spec.ell = pick(rng, 0, cfg.spec.l - 1);
  cfg.c = random_hermitian_tensor(cfg.n, r, mix64(kSeed + index));
  cfg.c *= 0.5;
  return cfg;
}

struct Identity {
  int s, alpha, beta;
  ChernPoly chern;
  SegrePoly segre;
  std::vector<std::pair<Partition, int>> schur;
};

std::vector<Identity> identities() {
  const int r = 4;
  auto sg = [](int j) { return SegrePoly::var(4, j); };
  auto sg3 = [](int j) { return SegrePoly::var(3, j); };
  return {
      {1, 2, 2, c(r, 1).pow(3) + c(r, 1) * c(r, 2) * Rational(2) - c(r, 3),
       sg3(1).pow(3) * Rational(-2) + sg3(3),
       {{{3}, 2}, {{2, 1}, 4}, {{1, 1, 1}, 1}}},
      {1, 3, 2,
       c(r, 1).pow(4) + c(r, 1).pow(2) * c(r, 2) * Rational(3) - c(r, 1) * c(r, 3) * Rational(3) - c(r, 4),
       sg(1).pow(2) * sg(2) * Rational(6) - sg(1) * sg(3) * Rational(5) - sg(2).pow(2) + sg(4),
       {{{3, 1}, 6}, {{2, 2}, 5}, {{2, 1, 1}, 6}, {{1, 1, 1, 1}, 1}}},
      {2, 3, 2, c(r, 1).pow(3) - c(r, 3), sg3(1) * sg3(2) * Rational(-2) + sg3(3), {{{2, 1}, 2}, {{1, 1, 1}, 1}}},
      {2, 4, 2, c(r, 1).pow(4) - c(r, 1) * c(r, 3) * Rational(3) + c(r, 4) * Rational(2),
       sg(1) * sg(3) + sg(2).pow(2) * Rational(2) - sg(4) * Rational(2),
       {{{2, 2}, 2}, {{2, 1, 1}, 3}, {{1, 1, 1, 1}, 1}}},
  };
}

Outcome reference_identities() {
  std::ostringstream out, err;
  const char* argv[] = {"flagforms", "examples-paper"};
  const int code = cli::run(2, argv, out, err);
  int pass_lines = 0;
  std::istringstream lines(out.str());
  for (std::string line; std::getline(lines, line);) pass_lines += line.rfind("PASS ", 0) == 0;
  bool ok = code == 0 && pass_lines == 4;
  for (const Identity& id : identities()) {
    const GrassmannPushforward g = grassmann_quotient_pushforward(4, 4, id.s, id.alpha, id.beta);
    const int k = *id.chern.degree();
    ok = ok && g.value == id.chern && to_segre(g.value, k) == id.segre && from_segre(id.segre, 4) == id.chern;
    for (const auto& [p, coeff] : g.schur.coords) {
      Rational expected = 0;
      for (const auto& [q, v] : id.schur) {
        if (normalize(p) == q) expected = v;
      }
      ok = ok && coeff == expected;
    }
  }
  return {ok, "examples-paper exit " + std::to_string(code) + ", " + std::to_string(pass_lines) +
                  " PASS lines; Chern, Segre and Schur forms of 4 identities checked exactly"};
}

Outcome jacobi_trudi() {
  int cases = 0;
  for (int r = 1; r <= 4; ++r) {
    for (int k = 0; k <= 6; ++k) {
      for (const Partition& sigma : partitions(k, k)) {
        ChernPoly rhs = generalized_schur(conjugate(sigma), r);
        if (k % 2 == 1) rhs = -rhs;
        if (!(schur_polynomial(sigma, r) == rhs)) return {false, "fails at r=" + std::to_string(r)};
        ++cases;
      }
    }
  }
  return {true, std::to_string(cases) + " cases with |sigma| <= 6, r <= 4"};
}

Outcome oracle_equivalence() {
  std::size_t monomials = 0, flags = 0;
  for (int r = 1; r <= 4; ++r) {
    for (const DimensionSequence& rho : all_dimension_sequences(r)) {
      DeterminantalPushforward dp(rho);
      SymmetrizerOracle oracle(rho);
      const int d = relative_dimension(rho);
      for (int deg = 0; deg <= d + 3; ++deg) {
        for (const auto& e : compositions(deg, r)) {
          const RootPoly f = RootPoly::monomial(e);
          if (!(dp.push(f) == oracle.push(f))) return {false, "mismatch on " + f.to_string()};
          ++monomials;
        }
      }
      ++flags;
    }
  }
  return {true, std::to_string(monomials) + " monomials over " + std::to_string(flags) + " flag types"};
}

Outcome schur_via_flag() {
  std::string eps_text;
  int cases = 0;
  for (int r = 1; r <= 4; ++r) {
    int eps = 0;
    for (int k = 0; k <= 4; ++k) {
      for (const Partition& sigma : partitions(k, r)) {
        const FlagSchurResult res = schur_from_complete_flag(sigma, r);
        if (!(res.value == schur_polynomial(sigma, r) * Rational(res.epsilon))) return {false, "value mismatch"};
        if (eps == 0) eps = res.epsilon;
        if (res.epsilon != eps) return {false, "epsilon not constant for r=" + std::to_string(r)};
        ++cases;
      }
    }
    eps_text += (r > 1 ? ", " : "") + std::string("eps(") + std::to_string(r) + ")=" + std::to_string(eps);
  }
  return {true, std::to_string(cases) + " partitions; " + eps_text};
}

Outcome curvature_theorem() {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Config cfg = random_config(i);
    const FlagChart chart(cfg.rho, cfg.n);
    const FormMatrix fd = curvature_at(chart, cfg.spec, cfg.c, Eigen::VectorXcd::Zero(chart.dim())).theta;
    const FormMatrix exact = curvature_center(chart, cfg.spec, cfg.c);
    worst = std::max(worst, distance(fd, exact) / exact.max_abs());
  }
  return {worst <= 1e-5, "20 configurations, worst relative error " + fmt(worst) + " (limit 1e-5)"};
}

Outcome lemma_invariance() {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Config cfg = random_config(100 + i);
    const FlagChart chart(cfg.rho, cfg.n);
    CounterRng rng(kSeed, {0x1a, i});
    const Eigen::MatrixXcd v = orthonormal_frame(chart, gaussian_vector(rng, chart.dim(), 1.0));
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(chart.rank(), chart.rank());
    for (int b = 1; b <= cfg.rho.length(); ++b) {
      const auto [lo, hi] = cfg.rho.block_range(b - 1, b);
      const int size = hi - lo + 1;
      Eigen::MatrixXcd g(size, size);
      for (int x = 0; x < size; ++x) {
        for (int y = 0; y < size; ++y) g(x, y) = rng.complex_normal();
      }
      u.block(lo - 1, lo - 1, size, size) = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
    }
    worst = std::max(worst, distance(theta_intrinsic(chart, cfg.spec, v, cfg.c),
                                     theta_intrinsic(chart, cfg.spec, v * u, cfg.c)));
  }
  return {worst <= 1e-12, "50 block-unitary reframings, largest change " + fmt(worst) + " (limit 1e-12)"};
}

Outcome mixed_blocks() {
  CurvatureOptions o;
  o.mixed_blocks = true;
  o.recenter = false;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Config cfg = random_config(i);
    const FlagChart chart(cfg.rho, cfg.n);
    for (std::uint64_t p = 0; p < 10; ++p) {
      CounterRng rng(kSeed, {0x3b, i, p});
      const CurvatureSample s = curvature_at(chart, cfg.spec, cfg.c, gaussian_vector(rng, chart.dim(), 0.7), o);
      worst = std::max(worst, s.mixed_max / s.theta.max_abs());
    }
  }
  return {worst <= 1e-6, "20 configurations x 10 points, max mixed / |Theta| = " + fmt(worst) + " (limit 1e-6)"};
}

Outcome quotient_splitting() {
  const std::vector<std::pair<std::vector<int>, UniversalSpec>> cases = {
      {{0, 1, 2}, {1, 2}}, {{0, 1, 2, 3}, {1, 2}}, {{0, 1, 3, 4}, {1, 3}}, {{0, 2, 4}, {1, 2}}, {{0, 1, 2, 3, 4}, {2, 4}}};
  double min_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const DimensionSequence rho(cases[i].first);
    const FlagChart chart(rho, 1);
    const UniversalSpec spec = cases[i].second;
    CounterRng rng(kSeed, {0x5c, i});
    const Eigen::VectorXcd zeta0 = gaussian_vector(rng, chart.dim(), 1.0);
    const std::vector<int> block = chart.block(spec);
    const std::vector<int> below = chart.below(spec);
    const CurvatureTensor flat(1, rho.rank());
    std::vector<double> xs, ys;
    for (double t : {1e-1, 1e-2, 1e-3}) {
      const Eigen::VectorXcd zeta = t * zeta0;
      const Eigen::MatrixXcd u = splitting_coefficients(chart, spec, flat, Eigen::VectorXcd::Zero(1), zeta);
      double res = 0.0;
      for (std::size_t a = 0; a < block.size(); ++a) {
        for (std::size_t b = 0; b < below.size(); ++b) {
          const int p = chart.coordinate(block[a] + 1, below[b] + 1);
          const Complex first_order = p < 0 ? Complex(0.0) : -std::conj(zeta(p));
          res = std::max(res, std::abs(u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) - first_order));
        }
      }
      xs.push_back(std::log(t));
      ys.push_back(std::log(res));
    }
    const double mx = (xs[0] + xs[1] + xs[2]) / 3.0, my = (ys[0] + ys[1] + ys[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    min_slope = std::min(min_slope, sxy / sxx);
  }
  return {min_slope >= 1.9, std::to_string(cases.size()) + " flag types, min log-log slope " + fmt(min_slope) +
                                " (limit 1.9)"};
}

SamplerConfig million(std::uint64_t seed) {
  SamplerConfig s;
  s.samples = 1000000;
  s.seed = seed;
  return s;
}

Outcome fs_calibration() {
  const FlagChart chart(DimensionSequence({0, 1, 2}), 1);
  const NumericPushforward p =
      pushforward_numeric(chart, parse_expression("c1(U2/U1)"), CurvatureTensor(1, 2), million(kSeed));
  const BaseCoefficient& b = p.coefficients.at(0);
  const double err = std::abs(b.estimate - 1.0);
  const bool consistent = err <= 3.0 * b.std_error + 1e-9;
  return {err <= 5e-3 && consistent && p.samples == 1000000,
          "estimate " + fmt(b.estimate.real()) + ", |error| " + fmt(err) + ", std error " + fmt(b.std_error)};
}

Outcome main_theorem(const std::vector<int>& rho_values, const std::string& expr, double tol) {
  const DimensionSequence rho(rho_values);
  const FlagChart chart(rho, 2);
  const CurvatureTensor tensor = griffiths_sample(2, rho.rank(), 3, kSeed);
  const ResidualReport rep = verify_main_theorem(chart, parse_expression(expr), tensor, million(kSeed + 1));
  return {rep.residual <= tol && rep.consistent,
          expr + " -> " + rep.phi.to_string() + ", residual " + fmt(rep.residual) + " (limit " + fmt(tol) +
              "), error " + fmt(rep.error_norm) + " vs 3 x std error " + fmt(3.0 * rep.std_error_norm)};
}

Outcome cone_theorem() {
  const int r = 4, n = 4;
  std::vector<std::vector<ExtForm>> chern;
  for (std::uint64_t t = 0; t < 5; ++t) {
    const CurvatureTensor g = griffiths_sample(n, r, 6, kSeed + t);
    if (griffiths_check(g, 1000, kSeed + t).min < 0.0) return {false, "sampled tensor not Griffiths positive"};
    chern.push_back(chern_forms(curvature_matrix(g)));
  }
  int cases = 0, zero_cases = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 1; s < r; ++s) {
    const int d = s * (r - s);
    for (int beta = 0; beta <= 2; ++beta) {
      for (int alpha = 0; alpha + 2 * beta <= n + d; ++alpha) {
        if (alpha + 2 * beta < d) continue;
        const GrassmannPushforward g = grassmann_quotient_pushforward(r, n, s, alpha, beta);
        for (const auto& [p, coeff] : g.schur.coords) {
          if (coeff < 0) return {false, "negative Schur coordinate for s=" + std::to_string(s)};
        }
        ++cases;
        if (g.value.is_zero()) {
          ++zero_cases;
          continue;
        }
        const int k = alpha + 2 * beta - d;
        for (std::size_t t = 0; t < chern.size(); ++t) {
          const SampledMinimum m = positivity_check(evaluate_on_chern_forms(g.value, chern[t]), k, n, 10000,
                                                    kSeed + 31 * t + static_cast<std::uint64_t>(cases));
          worst = std::min(worst, m.min / std::max(m.max_abs, 1e-300));
        }
      }
    }
  }
  return {worst >= -1e-9, std::to_string(cases) + " admissible (s, alpha, beta) (" + std::to_string(zero_cases) +
                              " zero), Schur coordinates >= 0, worst sampled min/scale " + fmt(worst)};
}

Outcome cone_comparisons() {
  const AngleHull hull = ray_hull_2d({builtin_family("fcone-r3-proj"), builtin_family("fcone-r3-hyper"),
                                      builtin_family("fcone-r3-complete")},
                                     64);
  const ConeMembership m = cone_membership_2d(Vec2{1, 0}, hull);
  const RayFamily2D& fam = builtin_family("fcone-r2");
  int off = 0;
  for (int j = 1; j < 64; ++j) {
    std::vector<Rational> params = {Rational(1), Rational(j) / 64};
    if (fam.num_params >= 3) params.push_back(Rational(0));
    params.resize(static_cast<std::size_t>(fam.num_params));
    off += fam.at(params).x != 0;
  }
  return {!m.inside && m.margin > 0.0 && off == 63,
          std::string("c2 ") + (m.inside ? "inside" : "outside") + " the rank-3 hull, margin " + fmt(m.margin) +
              "; rank-2 family off the S(1,1) axis at " + std::to_string(off) + "/63 sampled b > 0"};
}

}  // namespace

int main() {
  int failed = 0;
  failed += !run(1, "reference identities", 5, reference_identities);
  failed += !run(2, "Jacobi-Trudi relation", 10, jacobi_trudi);
  failed += !run(3, "oracle equivalence", 60, oracle_equivalence);
  failed += !run(4, "Schur classes from the complete flag", 30, schur_via_flag);
  failed += !run(5, "curvature at the chart center", 60, curvature_theorem);
  failed += !run(6, "reframing invariance", 0, lemma_invariance);
  failed += !run(7, "mixed blocks vanish", 0, mixed_blocks);
  failed += !run(8, "quotient metric splitting", 0, quotient_splitting);
  failed += !run(9, "Fubini-Study calibration", 0, fs_calibration);
  failed += !run(10, "main theorem, rank 2", 600, [] { return main_theorem({0, 1, 2}, "c1(U2/U1)^3", 0.02); });
  failed += !run(10, "main theorem, rank 3", 600, [] { return main_theorem({0, 1, 3}, "c1(Q1)^2*c2(Q1)", 0.03); });
  failed += !run(11, "cone theorem", 0, cone_theorem);
  failed += !run(12, "cone comparisons", 0, cone_comparisons);
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
