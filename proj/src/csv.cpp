#include "sskm/csv.hpp"

#include <cmath>
#include <cstdio>

#include "sskm/errors.hpp"

namespace sskm {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw DataError("cannot write " + path.string());
  std::vector<CsvField> fields(header.begin(), header.end());
  row(fields);
}

void CsvWriter::row(std::initializer_list<CsvField> fields) {
  row(std::vector<CsvField>(fields));
}

void CsvWriter::row(const std::vector<CsvField>& fields) {
  if (fields.size() != columns_) throw DataError("CSV row has the wrong number of fields");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << quote(fields[i].text());
  }
  out_ << '\n';
}

}  // namespace sskm
