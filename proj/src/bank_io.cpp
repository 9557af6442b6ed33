#include "catlab/bank_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string_view>

#include "catlab/errors.hpp"

namespace catlab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

BankParseResult parse_bank_csv(std::istream& in) {
  BankParseResult result;
  std::string line;
  std::size_t line_no = 0;
  int col_a = -1, col_b = -1, col_c = -1;
  std::size_t n_cols = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (!have_header) {
      have_header = true;
      n_cols = fields.size();
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const int idx = static_cast<int>(i);
        if (fields[i] == "a" && col_a < 0) col_a = idx;
        else if (fields[i] == "b" && col_b < 0) col_b = idx;
        else if (fields[i] == "c" && col_c < 0) col_c = idx;
        else {
          result.errors.push_back({line_no, "unexpected header column '" + std::string(fields[i]) + "'"});
        }
      }
      if (col_a < 0 || col_b < 0) {
        result.errors.push_back({line_no, "header must name columns a and b (c optional)"});
        return result;
      }
      continue;
    }
    if (fields.size() != n_cols) {
      result.errors.push_back({line_no, "expected " + std::to_string(n_cols) + " fields, found " +
                                            std::to_string(fields.size())});
      continue;
    }
    const auto a = parse_double(fields[col_a]);
    const auto b = parse_double(fields[col_b]);
    const auto c = col_c >= 0 ? parse_double(fields[col_c]) : std::optional<double>(0.0);
    if (!a || !b || !c) {
      result.errors.push_back({line_no, "malformed number"});
      continue;
    }
    try {
      result.items.emplace_back(*a, *b, *c);
    } catch (const InvalidInput& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  if (!have_header) result.errors.push_back({0, "empty file: missing header a,b,c"});
  return result;
}

BankParseResult load_bank_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    BankParseResult r;
    r.errors.push_back({0, "cannot open " + path.string()});
    return r;
  }
  return parse_bank_csv(in);
}

}  // namespace catlab
