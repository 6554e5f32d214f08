#pragma once

// Machine-readable reports. Every number carries a provenance tag: exact
// rationals as "p/q" strings, certified values as outward-rounded decimal
// interval endpoints. Rendering is deterministic: ordered keys, fixed
// formatting, no locale dependence.

#include "horoke/criteria.hpp"
#include "horoke/masolver.hpp"

#include <string>

namespace horoke {

// 17-significant-digit decimal of a rational, rounded toward -inf / +inf.
std::string decimal_lo(const Rat& r);
std::string decimal_hi(const Rat& r);

std::string tagged_json(const Enclosure& e);  // {"exact": ...} or {"interval": [...]}

std::string report_json(const ExistenceReport& rep, const std::string& id);
std::string rlb_json(const RicciLowerBound& r, const std::string& id);
std::string coupled_json(const CoupledSearchResult& r, const std::string& id,
                         const std::string& param);
std::string masolution_json(const MAProblem& p, const MASolution& s, const std::string& id);
std::string divergence_json(const DivergenceDiagnosis& d, const std::string& id);
std::string masolution_csv(const MAProblem& p, const MASolution& s);
std::string track_json(const std::vector<TrackPoint>& pts, const std::string& id);

std::string upoly_string(const UPoly& p, const std::string& var);

}  // namespace horoke
