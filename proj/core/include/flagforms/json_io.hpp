#pragma once

#include <string>

#include <json.hpp>

#include "flagforms/charpoly.hpp"
#include "flagforms/combinat.hpp"
#include "flagforms/extform.hpp"
#include "flagforms/flagnum.hpp"
#include "flagforms/formlab.hpp"
#include "flagforms/rootcalc.hpp"

namespace flagforms {

using Json = nlohmann::json;

// Integer sequences as arrays; partitions lose their trailing zeros.
Json sequence_to_json(const IntSequence& s);
Json partition_to_json(const Partition& p);
IntSequence sequence_from_json(const Json& j);

// {"rank": r, "terms": [{"coeff": "p/q", "exps": [...]}]}
Json to_json(const ChernPoly& p);
ChernPoly chern_from_json(const Json& j);
Json to_json(const SegrePoly& p);
SegrePoly segre_from_json(const Json& j);
// Same layout with "xi_exps" in place of "exps".
Json to_json(const RootPoly& p);
RootPoly roots_from_json(const Json& j);

// {"degree": k, "rank": r, "coords": [{"partition": [...], "coeff": "p/q"}]}
Json to_json(const SchurVector& v);
SchurVector schur_from_json(const Json& j);

// Push-forward result: the Chern polynomial plus "provenance" naming the
// formula and the calibration sign applied.
Json pushforward_to_json(const ChernPoly& p, const std::string& formula, int calibration_sign);

// {"n", "r", "entries": [{"j","k","alpha","beta","re","im"}]}, 0-based.
// Missing conjugate partners are filled in; inconsistent pairs are rejected.
Json to_json(const CurvatureTensor& c);
CurvatureTensor tensor_from_json(const Json& j);

// {"generators": g, "terms": [{"holo": [...], "anti": [...], "re", "im"}]}
Json to_json(const ExtForm& f);

Json to_json(const SamplerConfig& s);
SamplerConfig sampler_from_json(const Json& j);
Json to_json(const NumericPushforward& p);
Json to_json(const ResidualReport& r);

}  // namespace flagforms
