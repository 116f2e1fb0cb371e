#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "flagforms/charpoly.hpp"
#include "flagforms/conegeom.hpp"
#include "flagforms/expression.hpp"
#include "flagforms/flagnum.hpp"
#include "flagforms/formlab.hpp"
#include "flagforms/gysin.hpp"
#include "flagforms/random.hpp"
#include "flagforms/rootcalc.hpp"

namespace flagforms::cli {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string partition_text(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

struct ReferenceIdentity {
  int s;
  int alpha;
  int beta;
  const char* chern;
  const char* segre;
  std::vector<std::pair<Partition, int>> schur;
};

// r = n = 4 push-forwards of c_1(Q_s)^alpha c_2(Q_s)^beta.
const std::vector<ReferenceIdentity>& reference_identities() {
  static const std::vector<ReferenceIdentity> ids = {
      {1, 2, 2, "c1^3 + 2*c1*c2 - c3", "-2*s1^3 + s3", {{{3}, 2}, {{2, 1}, 4}, {{1, 1, 1}, 1}}},
      {1, 3, 2, "c1^4 + 3*c1^2*c2 - 3*c1*c3 - c4", "6*s1^2*s2 - 5*s1*s3 - s2^2 + s4",
       {{{3, 1}, 6}, {{2, 2}, 5}, {{2, 1, 1}, 6}, {{1, 1, 1, 1}, 1}}},
      {2, 3, 2, "c1^3 - c3", "-2*s1*s2 + s3", {{{2, 1}, 2}, {{1, 1, 1}, 1}}},
      {2, 4, 2, "c1^4 - 3*c1*c3 + 2*c4", "s1*s3 + 2*s2^2 - 2*s4", {{{2, 2}, 2}, {{2, 1, 1}, 3}, {{1, 1, 1, 1}, 1}}},
  };
  return ids;
}

SegrePoly parse_segre_poly(std::string text, int rank) {
  std::replace(text.begin(), text.end(), 's', 'c');
  return SegrePoly(rank, parse_chern_poly(text, rank).poly());
}

Json schur_sparse(const SchurVector& v) {
  Json out = Json::array();
  for (const auto& [p, c] : v.coords) {
    if (c != 0) out.push_back({{"partition", partition_to_json(p)}, {"coeff", to_string(c)}});
  }
  return out;
}

std::string schur_text(const SchurVector& v) {
  std::string s;
  for (const auto& [p, c] : v.coords) {
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    s += to_string(c) + "*S" + partition_text(p);
  }
  return s.empty() ? "0" : s;
}

Check run_guarded(const std::string& name, const std::function<Check()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    Check c;
    c.name = name;
    c.pass = false;
    c.detail = std::string("error: ") + e.what();
    return c;
  }
}

CounterRng suite_rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t i = 0) { return CounterRng(seed, {tag, i}); }

int pick(CounterRng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform() * (hi - lo + 1)) % (hi - lo + 1);
}

struct RandomConfig {
  DimensionSequence rho{std::vector<int>{0, 1, 2}};
  UniversalSpec spec;
  int n = 1;
  CurvatureTensor c;
};

RandomConfig random_config(std::uint64_t seed, std::uint64_t index) {
  CounterRng rng = suite_rng(seed, 0x636667, index);
  RandomConfig cfg;
  const int r = pick(rng, 2, 4);
  cfg.n = pick(rng, 1, 4);
  std::vector<DimensionSequence> all = all_dimension_sequences(r);
  all.erase(std::remove_if(all.begin(), all.end(), [](const DimensionSequence& d) { return d.length() < 2; }),
            all.end());
  cfg.rho = all[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(all.size()) - 1))];
  const int m = cfg.rho.length();
  cfg.spec.l = pick(rng, 1, m);
  cfg.spec.ell = pick(rng, 0, cfg.spec.l - 1);
  cfg.c = random_hermitian_tensor(cfg.n, r, mix64(seed ^ (0x7465ULL + index)));
  cfg.c *= 0.5;
  return cfg;
}

std::string config_text(const RandomConfig& cfg) {
  std::string s = "rho=(";
  for (std::size_t i = 0; i < cfg.rho.values().size(); ++i) s += (i ? "," : "") + std::to_string(cfg.rho.values()[i]);
  return s + ") n=" + std::to_string(cfg.n) + " U" + std::to_string(cfg.spec.l) + "/U" + std::to_string(cfg.spec.ell);
}

Eigen::VectorXcd random_zeta(CounterRng& rng, int d, double scale) {
  Eigen::VectorXcd z(d);
  for (int p = 0; p < d; ++p) z(p) = scale * rng.complex_normal();
  return z;
}

}  // namespace

ChernPoly parse_chern_poly(const std::string& text, int rank) {
  const Expr e = parse_expression(text);
  auto leaf = [&](int j, const BundleRef& b) {
    if (b.kind != BundleRef::Kind::Ambient) throw std::invalid_argument("only c_j(E) may appear here");
    if (j > rank) throw std::invalid_argument("c" + std::to_string(j) + " exceeds rank " + std::to_string(rank));
    return j == 0 ? ChernPoly::one(rank) : ChernPoly::var(rank, j);
  };
  auto constant = [&](const Rational& q) { return ChernPoly::constant(rank, q); };
  return evaluate<ChernPoly>(e, leaf, constant);
}

Json conventions(const std::vector<DimensionSequence>& rhos) {
  static std::mutex mu;
  static std::map<int, int> eps;
  Json flag = Json::object();
  {
    std::lock_guard<std::mutex> lock(mu);
    for (int r = 1; r <= 4; ++r) {
      if (!eps.count(r)) eps[r] = flag_sign(r, 4);
      flag[std::to_string(r)] = eps[r];
    }
  }
  Json cal = Json::array();
  for (const auto& rho : rhos) {
    if (rho.rank() > SymmetrizerOracle::kMaxRank) continue;
    SymmetrizerOracle o(rho);
    cal.push_back({{"rho", rho.values()},
                   {"coset", o.calibration_sign(SymmetrizerOracle::Route::Coset)},
                   {"complete_flag", o.calibration_sign(SymmetrizerOracle::Route::CompleteFlag)}});
  }
  return {{"segre", "s(t) = c(t)^{-1}, s_1 = -c_1"},
          {"schur", "S_sigma = det(c_{sigma_i + j - i})"},
          {"flag_sign", flag},
          {"oracle_calibration", cal}};
}

std::vector<Check> examples_paper() {
  std::vector<Check> out;
  for (const ReferenceIdentity& id : reference_identities()) {
    const std::string name = "grassmann s=" + std::to_string(id.s) + " alpha=" + std::to_string(id.alpha) +
                             " beta=" + std::to_string(id.beta);
    out.push_back(run_guarded(name, [&] {
      Check c;
      c.name = name;
      const GrassmannPushforward g = grassmann_quotient_pushforward(4, 4, id.s, id.alpha, id.beta);
      const ChernPoly want = parse_chern_poly(id.chern, 4);
      const int k = *want.degree();
      const SegrePoly segre = to_segre(g.value, k);
      const SegrePoly want_segre = parse_segre_poly(id.segre, k);
      bool schur_ok = g.schur.degree == k;
      for (const auto& [p, coeff] : g.schur.coords) {
        Rational expected = 0;
        for (const auto& [q, v] : id.schur) {
          if (normalize(p) == q) expected = v;
        }
        schur_ok = schur_ok && coeff == expected;
      }
      const bool chern_ok = g.value == want;
      const bool segre_ok = segre == want_segre;
      c.pass = chern_ok && segre_ok && schur_ok;
      c.detail = g.value.to_string() + " = " + segre.to_string() + " = " + schur_text(g.schur);
      c.data = {{"pushforward", to_json(g.value)},
                {"text", g.value.to_string()},
                {"segre", segre.to_string()},
                {"schur", schur_sparse(g.schur)},
                {"expected", {{"pushforward", id.chern}, {"segre", id.segre}}},
                {"matches", {{"pushforward", chern_ok}, {"segre", segre_ok}, {"schur", schur_ok}}}};
      return c;
    }));
  }
  return out;
}

std::vector<Check> suite_identities() {
  std::vector<Check> out = examples_paper();

  out.push_back(run_guarded("jacobi-trudi duality", [] {
    Check c{"jacobi-trudi duality", true, "", Json::object()};
    int count = 0;
    for (int r = 1; r <= 4; ++r) {
      for (int k = 0; k <= 6; ++k) {
        for (const Partition& sigma : partitions(k, k)) {
          ChernPoly rhs = generalized_schur(conjugate(sigma), r);
          if (k % 2 == 1) rhs = -rhs;
          if (!(schur_polynomial(sigma, r) == rhs)) {
            c.pass = false;
            c.detail = "fails for sigma=" + partition_text(sigma) + " r=" + std::to_string(r);
            return c;
          }
          ++count;
        }
      }
    }
    c.detail = std::to_string(count) + " cases with |sigma| <= 6, r <= 4";
    c.data = {{"cases", count}};
    return c;
  }));

  out.push_back(run_guarded("schur via complete flag", [] {
    Check c{"schur via complete flag", true, "", Json::object()};
    Json eps = Json::object();
    for (int r = 1; r <= 4; ++r) eps[std::to_string(r)] = flag_sign(r, 4);
    c.detail = "epsilon(r) constant over |sigma| <= 4 for r = 1..4: " + eps.dump();
    c.data = {{"epsilon", eps}};
    return c;
  }));

  out.push_back(run_guarded("segre round trip", [] {
    Check c{"segre round trip", true, "", Json::object()};
    const std::vector<ChernPoly> s = segre_polynomials(4, 1);
    if (!(s[1] == -ChernPoly::var(4, 1))) {
      c.pass = false;
      c.detail = "s_1 != -c_1";
      return c;
    }
    int count = 0;
    for (int k = 1; k <= 4; ++k) {
      for (const Partition& sigma : partitions(k, 4)) {
        const ChernPoly p = schur_polynomial(sigma, 4);
        if (!(from_segre(to_segre(p, k), 4) == p)) {
          c.pass = false;
          c.detail = "round trip fails for S" + partition_text(sigma);
          return c;
        }
        const SchurVector v = decompose_in_schur_basis(p, k);
        if (!(reconstruct(v) == p)) {
          c.pass = false;
          c.detail = "Schur decomposition fails for S" + partition_text(sigma);
          return c;
        }
        ++count;
      }
    }
    c.detail = std::to_string(count) + " Schur polynomials of rank 4";
    return c;
  }));
  return out;
}

std::vector<Check> suite_oracle() {
  std::vector<Check> out;
  for (int r = 1; r <= 4; ++r) {
    const std::string name = "determinantal vs symmetrizer r=" + std::to_string(r);
    out.push_back(run_guarded(name, [&] {
      Check c{name, true, "", Json::object()};
      std::size_t monomials = 0;
      Json cal = Json::array();
      for (const DimensionSequence& rho : all_dimension_sequences(r)) {
        DeterminantalPushforward dp(rho);
        SymmetrizerOracle oracle(rho);
        const int d = relative_dimension(rho);
        for (int deg = 0; deg <= d + 3; ++deg) {
          for (const auto& e : compositions(deg, r)) {
            const RootPoly f = RootPoly::monomial(e);
            const ChernPoly a = dp.push(f);
            const ChernPoly b = oracle.push(f);
            ++monomials;
            if (!(a == b)) {
              c.pass = false;
              c.detail = "mismatch on " + f.to_string() + ": " + a.to_string() + " vs " + b.to_string();
              return c;
            }
          }
        }
        cal.push_back({{"rho", rho.values()},
                       {"coset", oracle.calibration_sign(SymmetrizerOracle::Route::Coset)},
                       {"complete_flag", oracle.calibration_sign(SymmetrizerOracle::Route::CompleteFlag)}});
      }
      c.detail = std::to_string(monomials) + " monomials over " + std::to_string(cal.size()) + " flag types agree";
      c.data = {{"monomials", monomials}, {"calibration", cal}};
      return c;
    }));
  }
  return out;
}

std::vector<Check> suite_curvature(const SuiteOptions& opt) {
  std::vector<Check> out;
  const std::uint64_t seed = opt.seed;

  out.push_back(run_guarded("closed form vs finite differences", [&] {
    Check c{"closed form vs finite differences", true, "", Json::object()};
    double worst = 0.0;
    const int configs = 20;
    for (int i = 0; i < configs; ++i) {
      const RandomConfig cfg = random_config(seed, static_cast<std::uint64_t>(i));
      const FlagChart chart(cfg.rho, cfg.n);
      const FormMatrix fd = curvature_at(chart, cfg.spec, cfg.c, Eigen::VectorXcd::Zero(chart.dim())).theta;
      const FormMatrix exact = curvature_center(chart, cfg.spec, cfg.c);
      const double rel = distance(fd, exact) / std::max(exact.max_abs(), 1e-300);
      worst = std::max(worst, rel);
      if (rel > 1e-5) {
        c.pass = false;
        c.detail = config_text(cfg) + ": relative error " + fmt(rel);
        return c;
      }
    }
    c.detail = std::to_string(configs) + " configurations, worst relative error " + fmt(worst);
    c.data = {{"worst", worst}};
    return c;
  }));

  out.push_back(run_guarded("reframing invariance", [&] {
    Check c{"reframing invariance", true, "", Json::object()};
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const RandomConfig cfg = random_config(seed, 1000 + static_cast<std::uint64_t>(i));
      const FlagChart chart(cfg.rho, cfg.n);
      CounterRng rng = suite_rng(seed, 0x726672, static_cast<std::uint64_t>(i));
      const Eigen::MatrixXcd v = orthonormal_frame(chart, random_zeta(rng, chart.dim(), 1.0));
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
      const FormMatrix a = theta_intrinsic(chart, cfg.spec, v, cfg.c);
      const FormMatrix b = theta_intrinsic(chart, cfg.spec, v * u, cfg.c);
      worst = std::max(worst, distance(a, b));
    }
    c.pass = worst <= 1e-12;
    c.detail = "50 block-unitary changes of frame, largest change " + fmt(worst);
    c.data = {{"worst", worst}};
    return c;
  }));

  out.push_back(run_guarded("mixed blocks vanish", [&] {
    Check c{"mixed blocks vanish", true, "", Json::object()};
    double worst = 0.0;
    CurvatureOptions o;
    o.mixed_blocks = true;
    o.recenter = false;
    for (int i = 0; i < 5; ++i) {
      const RandomConfig cfg = random_config(seed, 2000 + static_cast<std::uint64_t>(i));
      const FlagChart chart(cfg.rho, cfg.n);
      for (int p = 0; p < 10; ++p) {
        CounterRng rng = suite_rng(seed, 0x6d6978, static_cast<std::uint64_t>(i * 10 + p));
        const CurvatureSample s = curvature_at(chart, cfg.spec, cfg.c, random_zeta(rng, chart.dim(), 0.7), o);
        const double rel = s.mixed_max / std::max(s.theta.max_abs(), 1e-300);
        worst = std::max(worst, rel);
      }
    }
    c.pass = worst <= 1e-6;
    c.detail = "50 chart points, largest mixed coefficient / |Theta| = " + fmt(worst);
    c.data = {{"worst", worst}};
    return c;
  }));

  out.push_back(run_guarded("quotient splitting", [&] {
    Check c{"quotient splitting", true, "", Json::object()};
    const std::vector<std::pair<std::vector<int>, UniversalSpec>> cases = {
        {{0, 1, 2, 3}, {1, 2}}, {{0, 1, 3, 4}, {1, 3}}, {{0, 2, 4}, {1, 2}}, {{0, 1, 2, 3, 4}, {2, 4}}};
    double min_slope = std::numeric_limits<double>::infinity();
    Json slopes = Json::array();
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const DimensionSequence rho(cases[i].first);
      const FlagChart chart(rho, 1);
      const UniversalSpec spec = cases[i].second;
      const CurvatureTensor zero(1, rho.rank());
      CounterRng rng = suite_rng(seed, 0x73706c, i);
      const Eigen::VectorXcd zeta0 = random_zeta(rng, chart.dim(), 1.0);
      const std::vector<int> block = chart.block(spec);
      const std::vector<int> below = chart.below(spec);
      std::vector<double> xs, ys;
      for (double t : {1e-1, 1e-2, 1e-3}) {
        const Eigen::VectorXcd zeta = t * zeta0;
        const Eigen::MatrixXcd u = splitting_coefficients(chart, spec, zero, Eigen::VectorXcd::Zero(1), zeta);
        double res = 0.0;
        for (std::size_t a = 0; a < block.size(); ++a) {
          for (std::size_t b = 0; b < below.size(); ++b) {
            const int p = chart.coordinate(block[a] + 1, below[b] + 1);
            const Complex expected = p < 0 ? Complex(0.0) : -std::conj(zeta(p));
            res = std::max(res, std::abs(u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) - expected));
          }
        }
        xs.push_back(std::log(t));
        ys.push_back(std::log(std::max(res, 1e-300)));
      }
      const double mx = (xs[0] + xs[1] + xs[2]) / 3.0, my = (ys[0] + ys[1] + ys[2]) / 3.0;
      double sxy = 0.0, sxx = 0.0;
      for (int k = 0; k < 3; ++k) {
        sxy += (xs[static_cast<std::size_t>(k)] - mx) * (ys[static_cast<std::size_t>(k)] - my);
        sxx += (xs[static_cast<std::size_t>(k)] - mx) * (xs[static_cast<std::size_t>(k)] - mx);
      }
      const double slope = sxy / sxx;
      slopes.push_back(slope);
      min_slope = std::min(min_slope, slope);
    }
    c.pass = min_slope >= 1.9;
    c.detail = "log-log slope of |u + conj(zeta)| over scales 1e-1..1e-3: min " + fmt(min_slope);
    c.data = {{"slopes", slopes}};
    return c;
  }));
  return out;
}

std::vector<Check> suite_gysin_numeric(const SuiteOptions& opt) {
  std::vector<Check> out;
  SamplerConfig sc;
  sc.seed = opt.seed;
  sc.samples = opt.samples ? opt.samples : 100000;

  out.push_back(run_guarded("fubini-study calibration", [&] {
    Check c{"fubini-study calibration", true, "", Json::object()};
    const FlagChart chart(DimensionSequence({0, 1, 2}), 1);
    const NumericPushforward p = pushforward_numeric(chart, parse_expression("c1(U2/U1)"), CurvatureTensor(1, 2), sc);
    const BaseCoefficient& b = p.coefficients.at(0);
    const double err = std::abs(b.estimate - 1.0);
    c.pass = err <= 5e-3 && err <= std::max(3.0 * b.std_error, 1e-9);
    c.detail = "integral of c_1(O(1)) over P^1 = " + fmt(b.estimate.real()) + " (std error " + fmt(b.std_error) + ")";
    c.data = to_json(p);
    return c;
  }));

  struct Case {
    std::vector<int> rho;
    const char* expr;
    double tol;
  };
  for (const Case& k : {Case{{0, 1, 2}, "c1(U2/U1)^3", 0.02}, Case{{0, 1, 3}, "c1(Q1)^2*c2(Q1)", 0.03}}) {
    const std::string name = std::string("main theorem ") + k.expr;
    out.push_back(run_guarded(name, [&] {
      Check c{name, true, "", Json::object()};
      const DimensionSequence rho(k.rho);
      const FlagChart chart(rho, 2);
      const CurvatureTensor tensor = griffiths_sample(2, rho.rank(), 3, opt.seed);
      const ResidualReport rep = verify_main_theorem(chart, parse_expression(k.expr), tensor, sc);
      c.pass = rep.residual <= k.tol && rep.consistent;
      c.detail = "push-forward " + rep.phi.to_string() + ", residual " + fmt(rep.residual) + " (limit " + fmt(k.tol) +
                 "), error " + fmt(rep.error_norm) + " vs std error " + fmt(rep.std_error_norm);
      c.data = to_json(rep);
      return c;
    }));
  }
  return out;
}

std::vector<Check> suite_positivity(const SuiteOptions& opt) {
  std::vector<Check> out;
  const std::size_t frames = opt.samples ? opt.samples : 10000;

  out.push_back(run_guarded("griffiths sign calibration", [&] {
    Check c{"griffiths sign calibration", true, "", Json::object()};
    const int sign = griffiths_c1_sign(3, 2, {opt.seed, opt.seed + 1, opt.seed + 2, opt.seed + 3});
    c.pass = sign == 1;
    c.detail = "c_1 of Griffiths positive tensors has sign " + std::to_string(sign);
    c.data = {{"sign", sign}};
    return c;
  }));

  out.push_back(run_guarded("grassmann push-forwards in the schur cone", [&] {
    Check c{"grassmann push-forwards in the schur cone", true, "", Json::object()};
    const int r = 4, n = 4;
    std::vector<CurvatureTensor> tensors;
    for (int t = 0; t < 5; ++t) {
      tensors.push_back(griffiths_sample(n, r, 6, opt.seed + static_cast<std::uint64_t>(t)));
      const SampledMinimum g = griffiths_check(tensors.back(), 1000, opt.seed + static_cast<std::uint64_t>(t));
      if (g.min < 0.0) throw std::logic_error("sampled tensor is not Griffiths positive");
    }
    std::vector<std::vector<ExtForm>> chern;
    for (const auto& t : tensors) chern.push_back(chern_forms(curvature_matrix(t)));
    Json cases = Json::array();
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 1; s < r; ++s) {
      const int d = s * (r - s);
      for (int beta = 0; beta <= 2 && beta <= r - s; ++beta) {
        for (int alpha = 0; alpha + 2 * beta <= n + d; ++alpha) {
          if (alpha + 2 * beta < d) continue;
          if (beta > 0 && r - s < 2) continue;
          const GrassmannPushforward g = grassmann_quotient_pushforward(r, n, s, alpha, beta);
          const SchurConeCheck cone = in_schur_cone(g.schur);
          const int k = alpha + 2 * beta - d;
          double min_rel = std::numeric_limits<double>::infinity();
          for (std::size_t t = 0; t < tensors.size(); ++t) {
            const ExtForm form = evaluate_on_chern_forms(g.value, chern[t]);
            const SampledMinimum m = positivity_check(form, k, n, frames, opt.seed + 17 * t);
            const double scale = std::max(m.max_abs, 1e-300);
            min_rel = std::min(min_rel, m.min / scale);
          }
          worst = std::min(worst, min_rel);
          const bool ok = cone.inside && min_rel >= -1e-9;
          cases.push_back({{"s", s}, {"alpha", alpha}, {"beta", beta}, {"value", g.value.to_string()},
                           {"schur", schur_sparse(g.schur)}, {"min_over_scale", min_rel}, {"pass", ok}});
          if (!ok) c.pass = false;
        }
      }
    }
    c.detail = std::to_string(cases.size()) + " push-forwards, Schur coordinates >= 0, worst sampled min/scale " +
               fmt(worst) + " over " + std::to_string(frames) + " frames x 5 tensors";
    c.data = {{"cases", cases}};
    return c;
  }));

  out.push_back(run_guarded("c2 outside the rank-3 families", [&] {
    Check c{"c2 outside the rank-3 families", true, "", Json::object()};
    std::vector<RayFamily2D> fams = {builtin_family("fcone-r3-proj"), builtin_family("fcone-r3-hyper"),
                                     builtin_family("fcone-r3-complete")};
    const AngleHull hull = ray_hull_2d(fams, 64);
    const ConeMembership m = cone_membership_2d(Vec2{1, 0}, hull);
    c.pass = !m.inside && m.margin > 0.0;
    c.detail = std::string(m.inside ? "inside" : "outside") + ", margin " + fmt(m.margin) + " at grid 64";
    c.data = {{"inside", m.inside}, {"margin", m.margin}, {"rays", hull.rays}};
    return c;
  }));

  out.push_back(run_guarded("rank-2 family leaves the S_(1,1) axis", [&] {
    Check c{"rank-2 family leaves the S_(1,1) axis", true, "", Json::object()};
    const RayFamily2D& fam = builtin_family("fcone-r2");
    int off = 0, total = 0;
    for (int j = 1; j < 64; ++j) {
      std::vector<Rational> params = {Rational(1)};
      if (fam.num_params >= 2) params.push_back(Rational(j) / 64);
      if (fam.num_params >= 3) params.push_back(Rational(0));
      const Vec2 v = fam.at(params);
      ++total;
      if (v.x != 0) ++off;
    }
    c.pass = off == total;
    c.detail = std::to_string(off) + " of " + std::to_string(total) + " sampled rays with b > 0 have a non-zero S_(2) part";
    c.data = {{"off_axis", off}, {"sampled", total}};
    return c;
  }));
  return out;
}

}  // namespace flagforms::cli
