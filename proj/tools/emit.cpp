#include "emit.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace chordal::cli {

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "text") return Format::text;
  throw std::invalid_argument("unsupported format: " + name);
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n;") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_row(std::ostringstream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << '\n';
}

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

std::string emit_csv(const Report& r) {
  std::ostringstream os;
  const Json* rows = nullptr;
  if (!r.table.empty() && r.doc.contains(r.table)) rows = &r.doc.at(r.table);
  if (!rows) {
    std::vector<std::string> head, vals;
    for (const auto& [k, v] : r.doc.items())
      if (is_scalar(v)) {
        head.push_back(k);
        vals.push_back(scalar_text(v));
      }
    csv_row(os, head);
    csv_row(os, vals);
    return os.str();
  }
  std::vector<std::string> head;
  if (!rows->empty() && rows->front().is_object()) {
    for (const auto& [k, v] : rows->front().items()) head.push_back(k);
  } else {
    head = {"index", r.table};
  }
  csv_row(os, head);
  std::size_t i = 0;
  for (const auto& row : *rows) {
    std::vector<std::string> vals;
    if (row.is_object()) {
      for (const auto& k : head) vals.push_back(row.contains(k) ? scalar_text(row.at(k)) : "");
    } else {
      vals = {std::to_string(i), scalar_text(row)};
    }
    csv_row(os, vals);
    ++i;
  }
  return os.str();
}

void text_value(std::ostringstream& os, const std::string& key, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_scalar(v)) {
    const std::string t = scalar_text(v);
    os << pad << key << ":" << (t.empty() ? "" : " " + t) << '\n';
  } else if (v.is_object()) {
    os << pad << key << ":" << (v.empty() ? " (none)" : "") << '\n';
    for (const auto& [k, x] : v.items()) text_value(os, k, x, indent + 2);
  } else {
    os << pad << key << ":" << (v.empty() ? " (none)" : "") << '\n';
    std::size_t i = 0;
    for (const auto& x : v) {
      if (is_scalar(x)) {
        os << pad << "  " << scalar_text(x) << '\n';
      } else {
        text_value(os, "[" + std::to_string(i) + "]", x, indent + 2);
      }
      ++i;
    }
  }
}

}  // namespace

std::string emit(const Report& report, Format format) {
  switch (format) {
    case Format::json: return report.doc.dump(2) + "\n";
    case Format::csv: return emit_csv(report);
    case Format::text: {
      std::ostringstream os;
      for (const auto& [k, v] : report.doc.items()) text_value(os, k, v, 0);
      return os.str();
    }
  }
  throw std::invalid_argument("unsupported format");
}

}  // namespace chordal::cli
