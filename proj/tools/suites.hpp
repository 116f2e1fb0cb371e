#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flagforms/json_io.hpp"

namespace flagforms::cli {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  Json data = Json::object();
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 0;  // 0: suite default
};

std::vector<Check> examples_paper();
std::vector<Check> suite_identities();
std::vector<Check> suite_oracle();
std::vector<Check> suite_curvature(const SuiteOptions& opt);
std::vector<Check> suite_gysin_numeric(const SuiteOptions& opt);
std::vector<Check> suite_positivity(const SuiteOptions& opt);

// Sign conventions used by the engine, for embedding in reports.
Json conventions(const std::vector<DimensionSequence>& rhos = {});

// Parses a polynomial in bare Chern symbols c1..cr (c_j of E).
ChernPoly parse_chern_poly(const std::string& text, int rank);

}  // namespace flagforms::cli
