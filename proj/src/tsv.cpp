#include "tsv.hpp"

namespace derivchain::detail {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto at = text.find(sep, start);
    out.emplace_back(text.substr(start, at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::vector<TsvRow> read_tsv(std::istream& in, std::string_view header_first) {
  std::vector<TsvRow> rows;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split(line, '\t');
    if (first && fields.front() == header_first) {
      first = false;
      continue;
    }
    first = false;
    rows.push_back({lineno, std::move(fields)});
  }
  return rows;
}

}  // namespace derivchain::detail
