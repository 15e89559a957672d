#include "topicforge/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "topicforge/error.hpp"

namespace topicforge {

namespace {

double parse_number(std::string_view field) {
  std::size_t b = 0;
  std::size_t e = field.size();
  while (b < e && (field[b] == ' ' || field[b] == '\t')) ++b;
  while (e > b && (field[e - 1] == ' ' || field[e - 1] == '\t' || field[e - 1] == '\r')) --e;
  field = field.substr(b, e - b);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw Error(ErrorCode::Parse, "not a number: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record.front().empty())) records.push_back(std::move(record));
    record.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_record();
    } else if (c == '\r') {
      // tolerated before '\n'
    } else {
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::Parse, "unterminated quoted CSV field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

std::string to_csv(const LabeledMatrix& m) {
  std::string out;
  for (const auto& c : m.cols()) {
    out += ',';
    out += csv_field(c);
  }
  out += '\n';
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    out += csv_field(m.rows()[i]);
    for (std::size_t j = 0; j < m.n_cols(); ++j) {
      out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

LabeledMatrix matrix_from_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  auto records = parse_csv(text);
  if (records.size() < 2) throw Error(ErrorCode::Parse, "CSV matrix needs a header and a row");
  const auto& header = records.front();
  if (header.size() < 2) throw Error(ErrorCode::Parse, "CSV header has no column labels");
  std::vector<std::string> cols(header.begin() + 1, header.end());
  std::vector<std::string> rows;
  std::vector<double> values;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size()) {
      throw Error(ErrorCode::Parse,
                  "CSV record " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                      " fields, header has " + std::to_string(header.size()));
    }
    rows.push_back(rec.front());
    for (std::size_t j = 1; j < rec.size(); ++j) values.push_back(parse_number(rec[j]));
  }
  return {std::move(rows), std::move(cols), std::move(values)};
}

Json to_json(const LabeledMatrix& m) {
  Json values = Json::array();
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.n_cols(); ++j) row.push_back(m(i, j));
    values.push_back(std::move(row));
  }
  Json j;
  j["rows"] = m.rows().labels();
  j["cols"] = m.cols().labels();
  j["values"] = std::move(values);
  return j;
}

LabeledMatrix matrix_from_json(const Json& j) {
  try {
    auto rows = j.at("rows").get<std::vector<std::string>>();
    auto cols = j.at("cols").get<std::vector<std::string>>();
    std::vector<double> flat;
    const auto& values = j.at("values");
    if (!values.is_array() || values.size() != rows.size()) {
      throw Error(ErrorCode::DimensionMismatch, "\"values\" must have one array per row");
    }
    for (const auto& row : values) {
      if (!row.is_array() || row.size() != cols.size()) {
        throw Error(ErrorCode::DimensionMismatch, "ragged row in \"values\"");
      }
      for (const auto& x : row) flat.push_back(x.get<double>());
    }
    return {std::move(rows), std::move(cols), std::move(flat)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("matrix JSON: ") + e.what());
  }
}

Json to_json(const LabeledVector& v) {
  Json j;
  j["labels"] = v.labels().labels();
  j["values"] = std::vector<double>(v.values().begin(), v.values().end());
  return j;
}

LabeledVector vector_from_json(const Json& j) {
  try {
    return {j.at("labels").get<std::vector<std::string>>(),
            j.at("values").get<std::vector<double>>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("vector JSON: ") + e.what());
  }
}

}  // namespace topicforge
