#include "osborne/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "osborne/errors.hpp"

namespace osborne {

MatrixFormat format_from_name(const std::string& name) {
  if (name == "matrix-market" || name == "mtx") return MatrixFormat::matrix_market;
  if (name == "dense-csv" || name == "csv") return MatrixFormat::dense_csv;
  throw std::invalid_argument("unknown matrix format: " + name);
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_real(const std::string& token, int line) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError("expected a real number, got '" + token + "'", line);
  if (!std::isfinite(v))
    throw ParseError("entry is not a finite real: '" + token + "'", line);
  return v;
}

long parse_int(const std::string& token, int line) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw ParseError("expected an integer, got '" + token + "'", line);
  return v;
}

bool next_content_line(std::istream& in, std::string& out, int& line,
                       bool skip_comments) {
  while (std::getline(in, out)) {
    ++line;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    const auto pos = out.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    if (skip_comments && out[pos] == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

DenseMatrix parse_matrix_market(std::istream& in) {
  int line = 0;
  std::string text;

  // Peek at the banner; comment skipping would hide it, so read raw first.
  std::streampos start = in.tellg();
  if (!std::getline(in, text)) throw ParseError("empty input", 1);
  ++line;
  if (!text.empty() && text.back() == '\r') text.pop_back();
  if (lower(text).rfind("%%matrixmarket", 0) == 0) {
    std::istringstream banner(text);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (lower(object) != "matrix" || lower(format) != "coordinate")
      throw ParseError("header must declare 'matrix coordinate'", line);
    if (lower(field) != "real")
      throw ParseError("only the 'real' field is supported", line);
    if (lower(symmetry) != "general")
      throw ParseError("only 'general' symmetry is supported", line);
  } else {
    in.clear();
    in.seekg(start);
    line = 0;
  }

  if (!next_content_line(in, text, line, true))
    throw ParseError("missing size line", line + 1);
  std::istringstream size_line(text);
  std::string rows_tok, cols_tok, nnz_tok, extra;
  if (!(size_line >> rows_tok >> cols_tok >> nnz_tok) || (size_line >> extra))
    throw ParseError("size line must be 'rows cols nnz'", line);
  const long rows = parse_int(rows_tok, line);
  const long cols = parse_int(cols_tok, line);
  const long nnz = parse_int(nnz_tok, line);
  if (rows <= 0 || cols <= 0)
    throw ParseError("dimensions must be positive", line);
  if (rows > 46340)
    throw ParseError("dimension too large for the dense reader", line);
  if (rows != cols)
    throw ParseError("matrix must be square, got " + std::to_string(rows) +
                         "x" + std::to_string(cols),
                     line);
  if (nnz < 0) throw ParseError("entry count must be nonnegative", line);

  DenseMatrix m(static_cast<int>(rows));
  for (long k = 0; k < nnz; ++k) {
    if (!next_content_line(in, text, line, true))
      throw ParseError("unexpected end of file: expected " +
                           std::to_string(nnz) + " entries, got " +
                           std::to_string(k),
                       line + 1);
    std::istringstream entry(text);
    std::string i_tok, j_tok, v_tok;
    if (!(entry >> i_tok >> j_tok >> v_tok) || (entry >> extra))
      throw ParseError("entry must be 'i j value'", line);
    const long i = parse_int(i_tok, line);
    const long j = parse_int(j_tok, line);
    if (i < 1 || i > rows || j < 1 || j > rows)
      throw ParseError("coordinates out of range", line);
    m.at(static_cast<int>(i) - 1, static_cast<int>(j) - 1) +=
        parse_real(v_tok, line);
  }
  if (next_content_line(in, text, line, true))
    throw ParseError("trailing content after the declared entries", line);
  return m;
}

DenseMatrix parse_dense_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string text;
  int line = 0;
  while (next_content_line(in, text, line, false)) {
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = text.find(',', pos);
      std::string token = text.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto first = token.find_first_not_of(" \t");
      if (first == std::string::npos)
        throw ParseError("empty field", line);
      const auto last = token.find_last_not_of(" \t");
      row.push_back(parse_real(token.substr(first, last - first + 1), line));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty input", 1);
  if (rows.size() > 46340)
    throw ParseError("dimension too large for the dense reader",
                     static_cast<int>(rows.size()));
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw ParseError("matrix must be square: " + std::to_string(n) +
                           " rows but row has " +
                           std::to_string(rows[i].size()) + " columns",
                       static_cast<int>(i) + 1);
  }
  DenseMatrix m(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

DenseMatrix parse_matrix(const std::string& path, MatrixFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return format == MatrixFormat::matrix_market ? parse_matrix_market(in)
                                               : parse_dense_csv(in);
}

}  // namespace osborne
