#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "kobpath/properties.hpp"

namespace kobpath {

using json = nlohmann::json;

// Domain config: {"kind":"disc"} | {"kind":"ball","n":2} |
// {"kind":"polydisc","radii":[1,1]} | {"kind":"halfplane"} |
// {"kind":"punctured_disc"} | {"kind":"annulus","r":0.25} |
// {"kind":"product","factors":[...]}.
Domain domain_from_json(const json& j);
json domain_to_json(const Domain& domain);

// Path spec: {"domain":{...},"T":3.0,"segments":[{"interval":[0,1],
// "kind":"affine","from":[[0,0]],"to":[[0.5,0]]}, ...]}; complex numbers as
// [re, im] pairs; sampled segments carry parallel "params"/"points".
Path path_from_json(const json& j);
json path_to_json(const Path& path);

CVec cvec_from_json(const json& j);
json cvec_to_json(const CVec& v);

json table_to_json(const ArcLengthTable& table);
json diagnostics_to_json(const ReparamDiagnostics& d);
json plan_to_json(const CollapsePlan& plan);
json reparam_result_to_json(const ReparamResult& result);
json report_to_json(const PropertyReport& report);

/// CSV with columns u, re/im per coordinate, speed.
void write_sigma_csv(const ReparamResult& result, std::ostream& out);

/// CSV of (s, t, lhs, rhs, slack) rows.
void write_slack_csv(const std::vector<PairCheck>& rows, std::ostream& out);

/// Write-temp-then-rename, so readers never observe partial files.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace kobpath
