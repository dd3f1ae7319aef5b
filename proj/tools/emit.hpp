#pragma once

#include <string>

#include <json.hpp>

namespace chordal::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, text };

Format parse_format(const std::string& name);

// A report document plus the name of the array field that CSV renders as
// rows. Without a table, CSV emits one row of the scalar fields.
struct Report {
  Json doc = Json::object();
  std::string table;
};

std::string emit(const Report& report, Format format);

}  // namespace chordal::cli
