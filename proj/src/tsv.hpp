#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace derivchain::detail {

struct TsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// Tab-separated rows; blank lines and lines starting with '#' are skipped, as
// is a leading header row whose first field equals `header_first`.
std::vector<TsvRow> read_tsv(std::istream& in, std::string_view header_first);

std::vector<std::string> split(std::string_view text, char sep);

// "-" and "" both mean "not given".
inline bool is_blank_field(std::string_view s) { return s.empty() || s == "-"; }

}  // namespace derivchain::detail
