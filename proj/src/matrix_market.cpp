#include "sskm/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sskm/errors.hpp"

namespace sskm {

namespace {

enum class Symmetry { General, Symmetric, Skew };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-comment, non-blank line.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (blank(line) || line.front() == '%') continue;
      return true;
    }
    return false;
  }
  std::size_t number() const { return number_; }
  std::istream& stream() { return in_; }
  void count_line() { ++number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

double parse_value(const std::string& token, std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  if (!token.empty() && token.front() == '+') ++first;
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "bad numeric value '" + token + "'");
  return v;
}

std::size_t parse_index(const std::string& token, std::size_t line) {
  std::size_t v = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "bad integer '" + token + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

void place(DenseMatrix& a, std::size_t i, std::size_t j, double v, Symmetry sym) {
  a(i, j) += v;
  if (i == j) return;
  if (sym == Symmetry::Symmetric) a(j, i) += v;
  if (sym == Symmetry::Skew) a(j, i) -= v;
}

}  // namespace

DenseMatrix read_matrix_market(std::istream& in) {
  LineReader reader(in);
  std::string banner;
  if (!std::getline(in, banner)) throw ParseError(1, "empty input");
  reader.count_line();
  if (!banner.empty() && banner.back() == '\r') banner.pop_back();
  if (banner.rfind("%%MatrixMarket", 0) != 0)
    throw ParseError(1, "banner must begin with %%MatrixMarket");
  const auto head = split(banner);
  if (head.size() != 5) throw ParseError(1, "banner needs object, format, field and symmetry");
  const std::string object = lower(head[1]);
  const std::string format = lower(head[2]);
  const std::string field = lower(head[3]);
  const std::string symmetry = lower(head[4]);

  if (object != "matrix") throw UnsupportedField("object '" + head[1] + "' is not a matrix");
  if (format != "coordinate" && format != "array") throw ParseError(1, "unknown format '" + head[2] + "'");
  if (field == "complex" || field == "pattern")
    throw UnsupportedField("field '" + head[3] + "' is not supported");
  if (field != "real" && field != "integer" && field != "double")
    throw ParseError(1, "unknown field '" + head[3] + "'");
  Symmetry sym = Symmetry::General;
  if (symmetry == "symmetric")
    sym = Symmetry::Symmetric;
  else if (symmetry == "skew-symmetric")
    sym = Symmetry::Skew;
  else if (symmetry == "hermitian")
    throw UnsupportedField("hermitian matrices are not supported");
  else if (symmetry != "general")
    throw ParseError(1, "unknown symmetry '" + head[4] + "'");

  std::string line;
  if (!reader.next(line)) throw ParseError(reader.number() + 1, "missing size line");
  const auto size = split(line);
  const bool coordinate = format == "coordinate";
  if (size.size() != (coordinate ? 3u : 2u)) throw ParseError(reader.number(), "malformed size line");
  const std::size_t rows = parse_index(size[0], reader.number());
  const std::size_t cols = parse_index(size[1], reader.number());
  if (rows == 0 || cols == 0) throw ParseError(reader.number(), "matrix has a zero dimension");
  if (sym != Symmetry::General && rows != cols)
    throw ParseError(reader.number(), "symmetric storage requires a square matrix");

  DenseMatrix a(rows, cols);
  if (coordinate) {
    const std::size_t nnz = parse_index(size[2], reader.number());
    for (std::size_t e = 0; e < nnz; ++e) {
      if (!reader.next(line))
        throw ParseError(reader.number() + 1, "expected " + std::to_string(nnz) + " entries, found " +
                                                  std::to_string(e));
      const auto tok = split(line);
      if (tok.size() != 3) throw ParseError(reader.number(), "entry needs row, column and value");
      const std::size_t i = parse_index(tok[0], reader.number());
      const std::size_t j = parse_index(tok[1], reader.number());
      if (i < 1 || i > rows || j < 1 || j > cols)
        throw ParseError(reader.number(), "index (" + tok[0] + ", " + tok[1] + ") out of range");
      place(a, i - 1, j - 1, parse_value(tok[2], reader.number()), sym);
    }
  } else {
    // Column-major; symmetric storage lists only the lower triangle.
    for (std::size_t j = 0; j < cols; ++j) {
      std::size_t first = 0;
      if (sym == Symmetry::Symmetric) first = j;
      if (sym == Symmetry::Skew) first = j + 1;
      for (std::size_t i = first; i < rows; ++i) {
        if (!reader.next(line)) throw ParseError(reader.number() + 1, "too few array entries");
        const auto tok = split(line);
        if (tok.size() != 1) throw ParseError(reader.number(), "array entry needs one value");
        place(a, i, j, parse_value(tok[0], reader.number()), sym);
      }
    }
  }
  if (reader.next(line)) throw ParseError(reader.number(), "unexpected trailing data");
  return a;
}

DenseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const DenseMatrix& a) {
  std::size_t nnz = 0;
  for (double v : a.values)
    if (v != 0.0) ++nnz;
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows << ' ' << a.cols << ' ' << nnz << '\n';
  char buf[64];
  for (std::size_t j = 0; j < a.cols; ++j) {
    for (std::size_t i = 0; i < a.rows; ++i) {
      const double v = a(i, j);
      if (v == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << i + 1 << ' ' << j + 1 << ' ' << buf << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& a) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_matrix_market(out, a);
}

}  // namespace sskm
