#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace revcomp::text {

// Shortest decimal string that parses back to exactly `value`.
std::string shortest(double value);

std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

template <typename Range>
std::string join(const Range& items, std::string_view sep) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += sep;
    out += item;
    first = false;
  }
  return out;
}

}  // namespace revcomp::text
