#pragma once

// Minimal delimiter-separated row handling shared by the file readers.

#include <string>
#include <string_view>
#include <vector>

namespace tlink::csv {

struct Field {
  std::string text;
  bool quoted = false;
};

// Splits one line. Quoted fields may contain the delimiter and doubled quotes.
// Throws tlink::Error on an unterminated quote.
std::vector<Field> split(std::string_view line, char delimiter);

// Quotes `text` when it is empty or contains the delimiter, a quote or a line
// break, so that split() returns it unchanged.
std::string quote(std::string_view text, char delimiter);

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace tlink::csv
