#pragma once

// JSON serialization for curves, points, certificates and reports.
// Every numeric value is a decimal string so nothing is rounded.

#include "dm/descent.hpp"
#include "dm/dmsearch.hpp"
#include "dm/ecq.hpp"
#include "dm/family.hpp"
#include "dm/rootnum.hpp"

#include <json.hpp>

namespace dm {

using json = nlohmann::json;

json to_json(const EllCurve& E);
EllCurve curve_from_json(const json& j);

json to_json(const EPoint& P);
EPoint epoint_from_json(const json& j);

json to_json(const CPoint& P);

json to_json(const DescentCertificate& cert);
json to_json(const LocalRootReport& r);
json to_json(const GlobalRootReport& r);
json to_json(const ParityCertificate& c);
json to_json(const IdentityReport& r);
json to_json(const DegreeEstimate& d);
json to_json(const CasselsMatrix& m);
json to_json(const SearchReport& r);

json family_summary_json(const FamilyBundle& B);

}  // namespace dm
