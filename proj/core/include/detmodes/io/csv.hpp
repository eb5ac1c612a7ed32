#pragma once

#include <cstdio>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace detmodes::io {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Line-buffered CSV writer: optional `# ` comment lines, a header row, then
/// rows of numbers. Every row is flushed so partial runs leave usable files.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns,
            const std::vector<std::string>& comments = {});
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  /// Pre-formatted cells, written as is.
  void row_text(const std::vector<std::string>& cells);

  std::size_t columns() const noexcept { return columns_; }

 private:
  std::FILE* file_ = nullptr;
  std::size_t columns_ = 0;
};

}  // namespace detmodes::io
