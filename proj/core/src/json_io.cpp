#include "flagforms/json_io.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace flagforms {

namespace {

template <class Tag>
Json poly_to_json(const GradedPoly<Tag>& p, const char* exps_key) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.ordered_terms()) {
    terms.push_back({{"coeff", to_string(c)}, {exps_key, e}});
  }
  return {{"rank", p.rank()}, {"terms", terms}};
}

template <class Tag>
GradedPoly<Tag> poly_from_json(const Json& j, const char* exps_key) {
  const int rank = j.at("rank").get<int>();
  if (rank < 0) throw std::invalid_argument("negative rank");
  Polynomial poly(static_cast<std::size_t>(rank));
  for (const Json& t : j.at("terms")) {
    Exponents e = t.at(exps_key).get<Exponents>();
    if (e.size() != static_cast<std::size_t>(rank)) throw std::invalid_argument("exponent vector has wrong length");
    for (int x : e) {
      if (x < 0) throw std::invalid_argument("negative exponent");
    }
    poly.add_term(e, parse_rational(t.at("coeff").get<std::string>()));
  }
  return GradedPoly<Tag>(rank, std::move(poly));
}

std::vector<int> mask_indices(ExtForm::Mask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1) {
    if (m & 1U) out.push_back(i);
  }
  return out;
}

Json complex_entry(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

}  // namespace

Json sequence_to_json(const IntSequence& s) { return Json(s); }

Json partition_to_json(const Partition& p) { return Json(normalize(p)); }

IntSequence sequence_from_json(const Json& j) { return j.get<IntSequence>(); }

Json to_json(const ChernPoly& p) { return poly_to_json(p, "exps"); }
ChernPoly chern_from_json(const Json& j) { return poly_from_json<ChernTag>(j, "exps"); }
Json to_json(const SegrePoly& p) { return poly_to_json(p, "exps"); }
SegrePoly segre_from_json(const Json& j) { return poly_from_json<SegreTag>(j, "exps"); }
Json to_json(const RootPoly& p) { return poly_to_json(p, "xi_exps"); }
RootPoly roots_from_json(const Json& j) { return poly_from_json<RootTag>(j, "xi_exps"); }

Json to_json(const SchurVector& v) {
  Json coords = Json::array();
  for (const auto& [sigma, c] : v.coords) {
    coords.push_back({{"partition", partition_to_json(sigma)}, {"coeff", to_string(c)}});
  }
  return {{"degree", v.degree}, {"rank", v.rank}, {"coords", coords}};
}

SchurVector schur_from_json(const Json& j) {
  SchurVector v;
  v.degree = j.at("degree").get<int>();
  v.rank = j.at("rank").get<int>();
  std::map<Partition, Rational> given;
  for (const Json& c : j.at("coords")) {
    Partition p = normalize(c.at("partition").get<Partition>());
    if (!is_partition(p) || weight(p) != v.degree || (!p.empty() && p.front() > v.rank)) {
      throw std::invalid_argument("coordinate partition outside the Schur basis");
    }
    given[p] = parse_rational(c.at("coeff").get<std::string>());
  }
  for (const Partition& p : partitions(v.degree, v.rank)) {
    const auto it = given.find(normalize(p));
    v.coords.emplace_back(p, it == given.end() ? Rational(0) : it->second);
  }
  return v;
}

Json pushforward_to_json(const ChernPoly& p, const std::string& formula, int calibration_sign) {
  Json j = to_json(p);
  j["provenance"] = {{"formula", formula}, {"calibration_sign", calibration_sign}};
  return j;
}

Json to_json(const CurvatureTensor& c) {
  Json entries = Json::array();
  for (int j = 0; j < c.n(); ++j) {
    for (int k = 0; k < c.n(); ++k) {
      for (int a = 0; a < c.r(); ++a) {
        for (int b = 0; b < c.r(); ++b) {
          const Complex v = c.at(j, k, a, b);
          if (v == Complex(0.0)) continue;
          entries.push_back({{"j", j}, {"k", k}, {"alpha", a}, {"beta", b}, {"re", v.real()}, {"im", v.imag()}});
        }
      }
    }
  }
  return {{"n", c.n()}, {"r", c.r()}, {"entries", entries}};
}

CurvatureTensor tensor_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const int r = j.at("r").get<int>();
  if (n < 1 || r < 1) throw std::invalid_argument("tensor dimensions must be positive");
  CurvatureTensor c(n, r);
  std::map<std::tuple<int, int, int, int>, Complex> given;
  for (const Json& e : j.at("entries")) {
    const int jj = e.at("j").get<int>();
    const int k = e.at("k").get<int>();
    const int a = e.at("alpha").get<int>();
    const int b = e.at("beta").get<int>();
    if (jj < 0 || jj >= n || k < 0 || k >= n || a < 0 || a >= r || b < 0 || b >= r) {
      throw std::invalid_argument("tensor entry index out of range");
    }
    const Complex v(e.at("re").get<double>(), e.value("im", 0.0));
    if (!given.emplace(std::make_tuple(jj, k, a, b), v).second) {
      throw std::invalid_argument("duplicate tensor entry");
    }
  }
  for (const auto& [key, v] : given) {
    const auto [jj, k, a, b] = key;
    c.at(jj, k, a, b) = v;
    const auto partner = std::make_tuple(k, jj, b, a);
    if (given.find(partner) == given.end()) c.at(k, jj, b, a) = std::conj(v);
  }
  c.check_hermitian();
  return c;
}

Json to_json(const ExtForm& f) {
  Json terms = Json::array();
  for (const auto& [key, c] : f.terms()) {
    terms.push_back({{"holo", mask_indices(f.holo_mask(key))},
                     {"anti", mask_indices(f.anti_mask(key))},
                     {"re", c.real()},
                     {"im", c.imag()}});
  }
  return {{"generators", f.generators()}, {"terms", terms}};
}

Json to_json(const SamplerConfig& s) {
  return {{"samples", s.samples}, {"seed", s.seed}, {"threads", s.threads}, {"chunk", s.chunk}, {"fd_step", s.fd_step}};
}

SamplerConfig sampler_from_json(const Json& j) {
  SamplerConfig s;
  s.samples = j.value("samples", s.samples);
  s.seed = j.value("seed", s.seed);
  s.threads = j.value("threads", s.threads);
  s.chunk = j.value("chunk", s.chunk);
  s.fd_step = j.value("fd_step", s.fd_step);
  if (s.chunk == 0 || !(s.fd_step > 0.0)) throw std::invalid_argument("invalid sampler configuration");
  return s;
}

Json to_json(const NumericPushforward& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients) {
    Json e = {{"holo", mask_indices(c.holo)}, {"anti", mask_indices(c.anti)}, {"std_error", c.std_error}};
    e["estimate"] = complex_entry(c.estimate);
    coeffs.push_back(e);
  }
  return {{"k", p.k},
          {"n", p.n},
          {"exact_zero", p.exact_zero},
          {"coefficients", coeffs},
          {"samples", p.samples},
          {"resampled", p.resampled}};
}

Json to_json(const ResidualReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"holo", mask_indices(e.holo)},
                       {"anti", mask_indices(e.anti)},
                       {"estimate", complex_entry(e.estimate)},
                       {"truth", complex_entry(e.truth)},
                       {"std_error", e.std_error},
                       {"samples", r.samples}});
  }
  return {{"phi", to_json(r.phi)},
          {"phi_text", r.phi.to_string()},
          {"entries", entries},
          {"error_norm", r.error_norm},
          {"truth_norm", r.truth_norm},
          {"std_error_norm", r.std_error_norm},
          {"residual", r.residual},
          {"consistent", r.consistent},
          {"samples", r.samples},
          {"resampled", r.resampled}};
}

}  // namespace flagforms
