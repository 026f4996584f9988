#pragma once

#include <json.hpp>

#include "qpir/oracle.hpp"
#include "qpir/verify.hpp"

namespace qpir {

using json = nlohmann::json;

/// Field elements serialize as their base-p integer encoding (< q).
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const Field* field);

json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j, const Field* field);

json field_to_json(const Field* field);
FieldPtr field_from_json(const json& j);

json code_to_json(const GrsCode& code);
GrsCode code_from_json(const json& j, const Field* field);

/// Transcript document: params, seed, per-round records, decoded file,
/// qudit counts and the rate as an exact fraction. `include_queries` drops
/// the (large) Q matrices when false.
json transcript_to_json(const Transcript& tr, bool include_queries = true);

json privacy_report_to_json(const PrivacyReport& rep);
json lemma5_report_to_json(const Lemma5Report& rep);

/// Input file document: {"files": m arrays of 2*beta*k integers < q}.
Matrix files_from_json(const json& j, const SchemeParams& p, const Field* field);
json files_to_json(const Matrix& x, const SchemeParams& p);

} // namespace qpir
