#include "csv.hpp"

#include "tlink/error.hpp"

namespace tlink::csv {

std::vector<Field> split(std::string_view line, char delimiter) {
  std::vector<Field> fields;
  Field current;
  bool in_quotes = false;
  bool field_start = true;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.text.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.text.push_back(c);
      }
      continue;
    }
    if (c == delimiter) {
      fields.push_back(std::move(current));
      current = Field{};
      field_start = true;
      continue;
    }
    if (c == '"' && field_start) {
      in_quotes = true;
      current.quoted = true;
      field_start = false;
      continue;
    }
    current.text.push_back(c);
    field_start = false;
  }
  if (in_quotes) throw Error("unterminated quoted field");
  fields.push_back(std::move(current));
  return fields;
}

std::string quote(std::string_view text, char delimiter) {
  const bool needs = text.empty() ||
                     text.find_first_of(std::string{delimiter, '"', '\n', '\r'}) !=
                         std::string_view::npos;
  if (!needs) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace tlink::csv
