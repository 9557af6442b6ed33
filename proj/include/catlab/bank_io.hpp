#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "catlab/irt.hpp"

namespace catlab {

struct BankRowError {
  std::size_t line = 0;  // 1-based line in the file
  std::string message;
};

struct BankParseResult {
  std::vector<Item> items;
  std::vector<BankRowError> errors;
  bool ok() const noexcept { return errors.empty(); }
};

// Item bank CSV: header naming the columns a, b and optionally c (any order),
// one item per row, '.' decimal separator. Missing c means c = 0. Blank
// lines are skipped. Every bad row is reported, not just the first.
BankParseResult parse_bank_csv(std::istream& in);
BankParseResult load_bank_csv(const std::filesystem::path& path);

}  // namespace catlab
