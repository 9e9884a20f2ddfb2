#include "pcm/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "pcm/errors.hpp"

namespace pcm {
namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

struct Line {
  std::vector<Token> tokens;
  std::size_t number;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    Line line{{}, line_no};
    std::size_t c = 0;
    while (c < raw.size()) {
      while (c < raw.size() && (raw[c] == ' ' || raw[c] == '\t')) ++c;
      if (c >= raw.size()) break;
      if (raw[c] == '#' && line.tokens.empty()) break;
      std::size_t start = c;
      while (c < raw.size() && raw[c] != ' ' && raw[c] != '\t') ++c;
      line.tokens.push_back({raw.substr(start, c - start), line_no, start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

double parse_number(std::string_view s, const Token& tok) {
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || s.empty()) {
    throw ParseError("invalid number '" + std::string(tok.text) + "' at line " +
                         std::to_string(tok.line) + ", column " +
                         std::to_string(tok.column),
                     tok.line, tok.column);
  }
  return value;
}

double parse_entry(const Token& tok) {
  const auto slash = tok.text.find('/');
  if (slash == std::string_view::npos) return parse_number(tok.text, tok);
  const double p = parse_number(tok.text.substr(0, slash), tok);
  const double q = parse_number(tok.text.substr(slash + 1), tok);
  if (q == 0.0) {
    throw ParseError("zero denominator in '" + std::string(tok.text) +
                         "' at line " + std::to_string(tok.line) +
                         ", column " + std::to_string(tok.column),
                     tok.line, tok.column);
  }
  return p / q;
}

bool is_integral(double x) {
  return x >= 1.0 && x < 9.007199254740992e15 && std::floor(x) == x;
}

}  // namespace

PairwiseComparisonMatrix parse_matrix(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty matrix text", 1, 1);

  const Line& header = lines.front();
  if (header.tokens.size() != 1) {
    throw ParseError("first line must contain only the matrix size",
                     header.number, 1);
  }
  const Token& size_tok = header.tokens.front();
  std::size_t n = 0;
  {
    auto [ptr, ec] = std::from_chars(
        size_tok.text.data(), size_tok.text.data() + size_tok.text.size(), n);
    if (ec != std::errc{} || ptr != size_tok.text.data() + size_tok.text.size() ||
        n < 2) {
      throw ParseError("matrix size must be an integer >= 2 at line " +
                           std::to_string(size_tok.line),
                       size_tok.line, size_tok.column);
    }
  }
  if (lines.size() - 1 != n) {
    const std::size_t where =
        lines.size() > n + 1 ? lines[n + 1].number : lines.back().number;
    throw ParseError("expected " + std::to_string(n) + " rows, found " +
                         std::to_string(lines.size() - 1),
                     where, 1);
  }

  std::vector<double> entries;
  entries.reserve(n * n);
  std::vector<const Token*> where;
  where.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const Line& line = lines[r + 1];
    if (line.tokens.size() != n) {
      throw ParseError("row " + std::to_string(r + 1) + " at line " +
                           std::to_string(line.number) + " has " +
                           std::to_string(line.tokens.size()) +
                           " entries, expected " + std::to_string(n),
                       line.number, 1);
    }
    for (const Token& tok : line.tokens) {
      entries.push_back(parse_entry(tok));
      where.push_back(&tok);
    }
  }

  try {
    return PairwiseComparisonMatrix::from_full(n, entries);
  } catch (const ValidationError& e) {
    if (!e.has_position()) throw;
    const Token& tok = *where[e.row() * n + e.col()];
    throw ParseError(std::string(e.what()) + " at line " +
                         std::to_string(tok.line) + ", column " +
                         std::to_string(tok.column),
                     tok.line, tok.column);
  }
}

PairwiseComparisonMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open matrix file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading matrix file " + path.string());
  return parse_matrix(buf.str());
}

std::string format_entry(double value) {
  if (is_integral(value)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", value);
    return buf;
  }
  const double inv = 1.0 / value;
  const double k = std::round(inv);
  if (is_integral(k) && 1.0 / k == value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "1/%.0f", k);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_matrix(const PairwiseComparisonMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::string> cells(n * n);
  std::vector<std::size_t> width(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cells[i * n + j] = format_entry(a(i, j));
      width[j] = std::max(width[j], cells[i * n + j].size());
    }
  }
  std::string out = std::to_string(n) + "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::string& cell = cells[i * n + j];
      out += cell;
      if (j + 1 < n) out.append(width[j] - cell.size() + 1, ' ');
    }
    out += '\n';
  }
  return out;
}

void write_matrix_file(const std::filesystem::path& path,
                       const PairwiseComparisonMatrix& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write matrix file " + path.string());
  out << format_matrix(a);
  if (!out) throw IoError("error writing matrix file " + path.string());
}

}  // namespace pcm
