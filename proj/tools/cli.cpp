#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flagforms/charpoly.hpp"
#include "flagforms/conegeom.hpp"
#include "flagforms/expression.hpp"
#include "flagforms/flagnum.hpp"
#include "flagforms/gysin.hpp"
#include "flagforms/json_io.hpp"
#include "flagforms/rootcalc.hpp"
#include "suites.hpp"

namespace flagforms::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<int> parse_ints(const std::string& s, const char* what) {
  std::vector<int> out;
  for (const std::string& part : split(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + " '" + s + "'");
    }
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s, const char* what) {
  std::vector<Rational> out;
  for (const std::string& part : split(s, ',')) {
    try {
      out.push_back(parse_rational(part));
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + " '" + s + "'");
    }
  }
  return out;
}

DimensionSequence parse_rho(const std::string& s) {
  try {
    return DimensionSequence(parse_ints(s, "--rho"));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("invalid --rho: ") + e.what());
  }
}

std::string partition_text(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
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

struct Report {
  Json json = Json::object();
  std::vector<std::string> lines;
  int status = 0;
};

void emit(const Report& rep, bool json, std::ostream& out) {
  if (json) {
    out << rep.json.dump(2) << "\n";
  } else {
    for (const auto& l : rep.lines) out << l << "\n";
  }
}

Report checks_report(const std::string& title, const std::vector<Check>& checks, Json conv) {
  Report rep;
  Json arr = Json::array();
  bool ok = true;
  for (const Check& c : checks) {
    rep.lines.push_back(std::string(c.pass ? "PASS " : "FAIL ") + c.name + ": " + c.detail);
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"data", c.data}});
    ok = ok && c.pass;
  }
  rep.json = {{"command", title}, {"checks", arr}, {"ok", ok}, {"conventions", std::move(conv)}};
  rep.status = ok ? 0 : 1;
  return rep;
}

Report cmd_schur(const std::string& partition, int rank) {
  const Partition sigma = parse_ints(partition, "--partition");
  if (!is_partition(sigma)) throw UsageError("--partition must be weakly decreasing and non-negative");
  if (rank < 1) throw UsageError("--rank must be positive");
  const ChernPoly p = schur_polynomial(sigma, rank);
  Report rep;
  rep.lines.push_back("S" + partition_text(normalize(sigma)) + " = " + p.to_string());
  rep.json = {{"command", "schur"}, {"partition", partition_to_json(sigma)}, {"value", to_json(p)},
              {"text", p.to_string()}, {"conventions", conventions()}};
  return rep;
}

Report cmd_segre(int rank, int degree, const std::string& poly) {
  if (rank < 1) throw UsageError("--rank must be positive");
  Report rep;
  rep.json = {{"command", "segre"}, {"rank", rank}, {"conventions", conventions()}};
  if (!poly.empty()) {
    const ChernPoly p = parse_chern_poly(poly, rank);
    const auto deg = p.degree();
    const int d = deg ? *deg : 0;
    const int bound = std::max(d, degree);
    const SegrePoly s = to_segre(p, bound);
    rep.lines.push_back(p.to_string() + " = " + s.to_string());
    rep.json["input"] = to_json(p);
    rep.json["segre"] = to_json(s);
    rep.json["text"] = s.to_string();
    return rep;
  }
  if (degree < 0) throw UsageError("--degree must be non-negative");
  const std::vector<ChernPoly> s = segre_polynomials(rank, degree);
  Json arr = Json::array();
  for (int k = 0; k <= degree; ++k) {
    rep.lines.push_back("s" + std::to_string(k) + " = " + s[static_cast<std::size_t>(k)].to_string());
    arr.push_back(to_json(s[static_cast<std::size_t>(k)]));
  }
  rep.json["segre_polynomials"] = arr;
  return rep;
}

Report cmd_schur_decompose(int rank, const std::string& poly) {
  if (rank < 1) throw UsageError("--rank must be positive");
  const ChernPoly p = parse_chern_poly(poly, rank);
  const auto deg = p.degree();
  if (!deg) throw UsageError("polynomial must be non-zero and weighted-homogeneous");
  const SchurVector v = decompose_in_schur_basis(p, *deg);
  const SchurConeCheck cone = in_schur_cone(v);
  Report rep;
  rep.lines.push_back(p.to_string() + " = " + schur_text(v));
  rep.lines.push_back(std::string("schur cone: ") + (cone.inside ? "inside" : "outside"));
  rep.json = {{"command", "schur-decompose"}, {"input", to_json(p)}, {"schur", to_json(v)},
              {"in_schur_cone", cone.inside}, {"conventions", conventions()}};
  return rep;
}

Report cmd_pushforward(const std::string& rho_text, const std::string& expr_text, const std::string& route) {
  const DimensionSequence rho = parse_rho(rho_text);
  const Expr e = parse_expression(expr_text);
  validate(e, rho);
  const RootPoly f = expand_expression(e, rho);
  Report rep;
  std::vector<std::string> warnings;
  ChernPoly value(rho.rank());
  Json provenance;
  bool agree = true;
  if (route == "dp" || route == "both") {
    DeterminantalPushforward dp(rho);
    value = dp.push(f, warnings);
    provenance = {{"formula", "determinantal: xi^lambda -> s_{reverse(lambda - nu)}"}, {"calibration_sign", 1}};
  }
  if (route == "oracle" || route == "both") {
    if (rho.rank() > SymmetrizerOracle::kMaxRank) throw UsageError("symmetrizer route supports rank <= 6");
    const SymmetrizerOracle oracle(rho);
    const auto r = oracle.route_for(f);
    const ChernPoly sym = oracle.push(f);
    const Json prov = {{"formula", r == SymmetrizerOracle::Route::Coset ? "Weyl coset symmetrization"
                                                                          : "complete-flag symmetrization"},
                       {"calibration_sign", oracle.calibration_sign(r)}};
    if (route == "oracle") {
      value = sym;
      provenance = prov;
    } else {
      agree = sym == value;
      provenance = Json::array({provenance, prov});
      rep.json["routes_agree"] = agree;
    }
  }
  rep.json["command"] = "pushforward";
  rep.json["rho"] = rho.values();
  rep.json["expr"] = to_string(e);
  rep.json["result"] = to_json(value);
  rep.json["result"]["provenance"] = provenance;
  rep.json["text"] = value.to_string();
  rep.json["warnings"] = warnings;
  rep.json["conventions"] = conventions({rho});
  rep.lines.push_back(value.to_string());
  const auto deg = value.degree();
  if (deg) {
    const SegrePoly s = to_segre(value, *deg);
    rep.lines.push_back("segre: " + s.to_string());
    rep.json["segre"] = to_json(s);
    const SchurVector v = decompose_in_schur_basis(value, *deg);
    rep.lines.push_back("schur: " + schur_text(v));
    rep.json["schur"] = to_json(v);
  }
  for (const auto& w : warnings) rep.lines.push_back("warning: " + w);
  if (route == "both") {
    rep.lines.push_back(std::string(agree ? "PASS" : "FAIL") + " determinantal and symmetrizer routes agree");
    rep.status = agree ? 0 : 1;
  }
  return rep;
}

Report cmd_cone(const std::string& families, const std::string& target, int grid, const std::string& expect) {
  if (grid < 1) throw UsageError("--grid must be positive");
  std::vector<RayFamily2D> fams;
  for (const std::string& name : split(families, ',')) {
    try {
      fams.push_back(builtin_family(name));
    } catch (const std::exception&) {
      throw UsageError("unknown family '" + name + "'");
    }
  }
  const std::vector<Rational> t = parse_rationals(target, "--target");
  if (t.size() != 2) throw UsageError("--target needs two coordinates");
  const Vec2 v{t[0], t[1]};
  if (v.x == 0 && v.y == 0) throw UsageError("--target must be non-zero");
  const AngleHull hull = ray_hull_2d(fams, grid);
  const ConeMembership m = cone_membership_2d(v, hull);
  Report rep;
  std::ostringstream margin;
  margin << std::setprecision(9) << m.margin;
  rep.lines.push_back(std::string(m.inside ? "inside" : "outside") + " (margin " + margin.str() + ", " +
                      std::to_string(hull.rays) + " rays, grid " + std::to_string(grid) + ")");
  Json hull_json = {{"full", hull.full}, {"rays", hull.rays}};
  if (!hull.full) {
    hull_json["lo"] = {to_string(hull.lo.x), to_string(hull.lo.y)};
    hull_json["hi"] = {to_string(hull.hi.x), to_string(hull.hi.y)};
    rep.lines.push_back("hull from (" + to_string(hull.lo.x) + ", " + to_string(hull.lo.y) + ") to (" +
                        to_string(hull.hi.x) + ", " + to_string(hull.hi.y) + ")");
  }
  rep.json = {{"command", "cone"}, {"families", split(families, ',')}, {"target", {to_string(v.x), to_string(v.y)}},
              {"grid", grid}, {"inside", m.inside}, {"margin", m.margin}, {"hull", hull_json}};
  if (!expect.empty()) {
    if (expect != "inside" && expect != "outside") throw UsageError("--expect must be inside or outside");
    const bool ok = (expect == "inside") == m.inside;
    rep.lines.push_back(std::string(ok ? "PASS" : "FAIL") + " expected " + expect);
    rep.status = ok ? 0 : 1;
  }
  return rep;
}

Report cmd_curvature(const std::string& rho_text, const std::string& spec_text, const std::string& tensor_file,
                     const std::string& zeta_text, double fd_step, bool mixed) {
  const DimensionSequence rho = parse_rho(rho_text);
  const std::vector<int> sp = parse_ints(spec_text, "--spec");
  if (sp.size() != 2) throw UsageError("--spec needs ell,l");
  std::ifstream in(tensor_file);
  if (!in) throw UsageError("cannot open tensor file '" + tensor_file + "'");
  CurvatureTensor c;
  try {
    c = tensor_from_json(Json::parse(in));
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad tensor file: ") + e.what());
  }
  if (c.r() != rho.rank()) throw UsageError("tensor rank does not match --rho");
  const FlagChart chart(rho, c.n());
  const UniversalSpec spec{sp[0], sp[1]};
  try {
    chart.check(spec);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  Eigen::VectorXcd zeta = Eigen::VectorXcd::Zero(chart.dim());
  if (!zeta_text.empty()) {
    std::vector<double> vals;
    for (const auto& part : split(zeta_text, ',')) {
      try {
        vals.push_back(std::stod(part));
      } catch (const std::exception&) {
        throw UsageError("cannot parse --zeta");
      }
    }
    if (vals.size() != static_cast<std::size_t>(2 * chart.dim())) {
      throw UsageError("--zeta needs " + std::to_string(2 * chart.dim()) + " reals (re,im per coordinate)");
    }
    for (int p = 0; p < chart.dim(); ++p) zeta(p) = Complex(vals[2 * p], vals[2 * p + 1]);
  }
  CurvatureOptions opt;
  opt.fd_step = fd_step;
  opt.mixed_blocks = mixed;
  const CurvatureSample s = curvature_at(chart, spec, c, zeta, opt);
  Report rep;
  Json entries = Json::array();
  for (int a = 0; a < s.theta.size(); ++a) {
    for (int b = 0; b < s.theta.size(); ++b) entries.push_back({{"alpha", a}, {"beta", b}, {"form", to_json(s.theta(a, b))}});
  }
  std::ostringstream line;
  line << std::setprecision(6) << "rank " << s.theta.size() << " curvature, hermitian defect " << s.hermitian_defect
       << ", max coefficient " << s.theta.max_abs();
  if (mixed) line << ", mixed block max " << s.mixed_max;
  rep.lines.push_back(line.str());
  rep.json = {{"command", "curvature"}, {"rho", rho.values()}, {"spec", sp}, {"theta", entries},
              {"hermitian_defect", s.hermitian_defect}, {"mixed_max", s.mixed_max}};
  if (zeta.isZero(0.0)) {
    const FormMatrix exact = curvature_center(chart, spec, c);
    const double rel = distance(exact, s.theta) / std::max(exact.max_abs(), 1e-300);
    const bool ok = rel <= 1e-5;
    std::ostringstream l2;
    l2 << std::setprecision(6) << (ok ? "PASS" : "FAIL") << " closed form at the center, relative error " << rel;
    rep.lines.push_back(l2.str());
    rep.json["center_relative_error"] = rel;
    rep.status = ok ? 0 : 1;
  }
  return rep;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic forms of flag bundles: push-forwards, Schur forms and curvature checks"};
  app.require_subcommand(1, 1);
  bool json = false;
  app.add_flag("--json", json, "JSON output");
  app.fallthrough();

  std::string partition;
  int rank = 0;
  int degree = 0;
  std::string poly, rho, expr, route = "dp", family, target, expect, spec, tensor, zeta, suite;
  int grid = 64;
  double fd_step = 1e-3;
  bool mixed = false;
  std::uint64_t seed = 1;
  std::size_t samples = 0;

  auto* schur = app.add_subcommand("schur", "Jacobi-Trudi Schur polynomial S_sigma(c_1..c_r)");
  schur->add_option("--partition", partition, "parts, e.g. 2,1")->required();
  schur->add_option("--rank", rank, "rank r")->required();

  auto* segre = app.add_subcommand("segre", "Segre polynomials, or a Chern polynomial in Segre variables");
  segre->add_option("--rank", rank, "rank r")->required();
  segre->add_option("--degree", degree, "largest degree");
  segre->add_option("--poly", poly, "polynomial in c1..cr to rewrite");

  auto* decompose = app.add_subcommand("schur-decompose", "coordinates of a Chern polynomial in the Schur basis");
  decompose->add_option("--rank", rank, "rank r")->required();
  decompose->add_option("--poly", poly, "homogeneous polynomial in c1..cr")->required();

  auto* push = app.add_subcommand("pushforward", "Gysin push-forward along a flag bundle");
  push->add_option("--rho", rho, "dimension sequence, e.g. 0,1,4")->required();
  push->add_option("--expr", expr, "polynomial in universal Chern classes")->required();
  push->add_option("--route", route, "dp, oracle or both")->check(CLI::IsMember({"dp", "oracle", "both"}));

  auto* cone = app.add_subcommand("cone", "membership of a ray in the hull of sampled ray families");
  cone->add_option("--family", family, "family name(s), comma separated")->required();
  cone->add_option("--target", target, "target ray x,y")->required();
  cone->add_option("--grid", grid, "parameter grid denominator");
  cone->add_option("--expect", expect, "inside or outside; exit 1 on mismatch");

  auto* curv = app.add_subcommand("curvature", "finite-difference curvature of a universal bundle");
  curv->add_option("--rho", rho, "dimension sequence")->required();
  curv->add_option("--spec", spec, "ell,l selecting U_l/U_ell")->required();
  curv->add_option("--tensor", tensor, "curvature tensor JSON file")->required();
  curv->add_option("--zeta", zeta, "chart point as re,im pairs (default: center)");
  curv->add_option("--fd-step", fd_step, "finite-difference step");
  curv->add_flag("--mixed", mixed, "also difference the mixed blocks");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"identities", "oracle", "curvature", "gysin-numeric", "positivity"}));
  auto* seed_opt = verify->add_option("--seed", seed, "random seed");
  verify->add_option("--samples", samples, "sample count (suite default when omitted)");

  auto* paper = app.add_subcommand("examples-paper", "the four rank-4 Grassmannian push-forward identities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Report rep;
    if (schur->parsed()) {
      rep = cmd_schur(partition, rank);
    } else if (segre->parsed()) {
      rep = cmd_segre(rank, degree, poly);
    } else if (decompose->parsed()) {
      rep = cmd_schur_decompose(rank, poly);
    } else if (push->parsed()) {
      rep = cmd_pushforward(rho, expr, route);
    } else if (cone->parsed()) {
      rep = cmd_cone(family, target, grid, expect);
    } else if (curv->parsed()) {
      rep = cmd_curvature(rho, spec, tensor, zeta, fd_step, mixed);
    } else if (verify->parsed()) {
      const bool stochastic = suite == "curvature" || suite == "gysin-numeric" || suite == "positivity";
      if (stochastic && std::getenv("CI") != nullptr && seed_opt->count() == 0) {
        throw UsageError("--seed is required for stochastic suites when CI is set");
      }
      const SuiteOptions opt{seed, samples};
      std::vector<Check> checks;
      if (suite == "identities") checks = suite_identities();
      if (suite == "oracle") checks = suite_oracle();
      if (suite == "curvature") checks = suite_curvature(opt);
      if (suite == "gysin-numeric") checks = suite_gysin_numeric(opt);
      if (suite == "positivity") checks = suite_positivity(opt);
      Json conv = conventions();
      rep = checks_report("verify " + suite, checks, conv);
      rep.json["suite"] = suite;
      if (stochastic) rep.json["seed"] = seed;
    } else if (paper->parsed()) {
      std::vector<DimensionSequence> rhos = {DimensionSequence::grassmannian(1, 4), DimensionSequence::grassmannian(2, 4)};
      rep = checks_report("examples-paper", examples_paper(), conventions(rhos));
    }
    emit(rep, json, out);
    return rep.status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace flagforms::cli
