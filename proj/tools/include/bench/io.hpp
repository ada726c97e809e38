#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bench {

/// 17 significant digits, so every double reads back exactly; "nan", "inf"
/// and "-inf" for non-finite values.
std::string format_double(double v);

/// Comma-separated table with a fixed header. Fields are written verbatim;
/// callers format numbers with format_double.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  std::size_t columns() const noexcept { return header_.size(); }
  /// Throws std::invalid_argument on a column-count mismatch.
  void add_row(std::vector<std::string> fields);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::string body_;
};

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partial file. Creates parent directories.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace bench
