#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lfz {

// Writes to a sibling temp file, then renames over the target.
void write_atomically(const std::filesystem::path& path, std::string_view contents);

// One CSV table with RFC 4180 quoting.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> row);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_quote(std::string_view field);

// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

}  // namespace lfz
