#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace sskm {

// 17 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double v);

// A CSV cell: either text or a number rendered with format_double.
class CsvField {
 public:
  CsvField(std::string_view s) : text_(s) {}
  CsvField(const std::string& s) : text_(s) {}
  CsvField(const char* s) : text_(s) {}
  CsvField(double v) : text_(format_double(v)) {}
  CsvField(std::size_t v) : text_(std::to_string(v)) {}
  CsvField(int v) : text_(std::to_string(v)) {}
  CsvField(unsigned long long v) : text_(std::to_string(v)) {}

  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

// UTF-8, header row first, '\n' line endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  void row(std::initializer_list<CsvField> fields);
  void row(const std::vector<CsvField>& fields);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace sskm
