#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "blockdescent/klein4.hpp"

namespace bd {

using Json = nlohmann::ordered_json;

Json field_to_json(const Field& f);
FieldPtr field_from_json(const Json& j);

/// Rows as strings.  Over GF(2) four entries per hex digit, most significant
/// bit first; over GF(2^n) each entry takes ceil(n/4) hex digits; in odd
/// characteristic rows are integer arrays.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const FieldPtr& f);
/// FNV-1a over the packed rows; stable across platforms.
std::string matrix_digest(const Matrix& m);

Json group_to_json(const PermGroup& g);
GroupPtr group_from_json(const Json& j);

Json module_to_json(const RepModule& m);
RepModule module_from_json(const Json& j);

Json complex_to_json(const BoundedComplex& x);

Json certificate_to_json(const DescentCertificate& c, const FieldTower& tower);
Json rickard_to_json(const RickardReport& r);
Json splendid_to_json(const SplendidReport& r);
Json classification_to_json(const SourceAlgebraClass& c);
Json blocks_to_json(const GroupPtr& g, const FieldPtr& f, const std::vector<BlockData>& blocks);

struct ReportInput {
  std::uint64_t seed = 0;
  bool timings = false;
  bool split_checked = false;
  bool split = false;
};
/// TheoremReport v1.
Json theorem_report_to_json(const TheoremReport& r, const ReportInput& in);

}  // namespace bd
