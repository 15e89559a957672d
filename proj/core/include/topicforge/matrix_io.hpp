#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "topicforge/labeled_matrix.hpp"

namespace topicforge {

using Json = nlohmann::ordered_json;

// CSV layout: header row is an empty cell followed by column labels; each
// following row is a row label followed by its entries. Fields containing a
// comma, quote or newline are quoted with doubled inner quotes (RFC 4180).
std::string to_csv(const LabeledMatrix& m);
LabeledMatrix matrix_from_csv(std::string_view text);

/// Splits one CSV document into records of unquoted fields.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_field(std::string_view field);

// {"rows": [...], "cols": [...], "values": [[...], ...]}
Json to_json(const LabeledMatrix& m);
LabeledMatrix matrix_from_json(const Json& j);

// {"labels": [...], "values": [...]}
Json to_json(const LabeledVector& v);
LabeledVector vector_from_json(const Json& j);

/// Shortest text that reads back to exactly the same double.
std::string format_double(double x);

}  // namespace topicforge
