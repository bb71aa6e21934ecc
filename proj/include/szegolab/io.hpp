#pragma once

// Serialization: decimal-string JSON and CSV for coefficient sequences,
// exponential models, pole reports, and point sets.  Real values are written
// as shortest round-trip decimal strings so that a write/read cycle at the
// same precision is bit-exact.

#include <string>
#include <vector>

#include "json.hpp"
#include "szegolab/analysis.hpp"
#include "szegolab/gsets.hpp"

namespace szegolab {

using Json = nlohmann::ordered_json;

Json real_to_json(const Real& r);
Real real_from_json(const Json& j, long bits);

Json cnum_to_json(const CNum& z);  // [re, im]
CNum cnum_from_json(const Json& j, long bits);

// [{"n": 0, "re": "...", "im": "..."}, ...]
Json series_to_json(const std::vector<CNum>& c);
std::vector<CNum> series_from_json(const Json& j, long bits);

// Header "n,re,im", one row per coefficient.
std::string series_to_csv(const std::vector<CNum>& c);
std::vector<CNum> series_from_csv(const std::string& text, long bits);

// {"terms":[{"c":[re,im],"mu":[re,im]},...],"tail_rate":"..."}
Json model_to_json(const ExponentialModel& m);
ExponentialModel model_from_json(const Json& j, long bits);

// {"poles":[{"z":[re,im],"residue":[re,im]},...],"order":[m,m],
//  "spurious_rejected":k}
Json poles_to_json(const PoleReport& r);

// {"points":[[re,im],...],"rmax":"...","eps":"..."}
Json set_to_json(const ExteriorSet& s);
ExteriorSet set_from_json(const Json& j, long bits);

// Point list from a set file, a pole report (its "z" entries), or a bare
// [[re,im],...] array.
std::vector<CNum> points_from_json(const Json& j, long bits);

// Command-line complex literal: "1.5", "-2i", "0.25-1e-3i", "i".
CNum parse_cnum_arg(const std::string& text, long bits);

Json parse_json_text(const std::string& text);  // IoFailure on malformed input
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace szegolab
