#include "plsolve/numkit/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace plsolve {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct Banner {
  std::string format;
  std::string field;
  std::string symmetry;
};

Banner read_banner(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("matrix market: empty input");
  std::istringstream ss(line);
  std::string tag, object, format, field, symmetry;
  ss >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix")
    throw ParseError("matrix market: missing %%MatrixMarket matrix banner");
  return {lower(format), lower(field), lower(symmetry)};
}

// next non-comment, non-blank line
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  const Banner b = read_banner(in);
  if (b.format != "coordinate") throw ParseError("matrix market: expected coordinate format");
  if (b.field != "real" && b.field != "integer")
    throw ParseError("matrix market: only real matrices are supported");
  if (b.symmetry != "general" && b.symmetry != "symmetric")
    throw ParseError("matrix market: unsupported symmetry '" + b.symmetry + "'");

  std::string line;
  if (!next_data_line(in, line)) throw ParseError("matrix market: missing size line");
  long long rows = 0, cols = 0, entries = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> entries) || rows < 0 || cols < 0 || entries < 0)
      throw ParseError("matrix market: bad size line");
  }
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(entries) * (b.symmetry == "symmetric" ? 2 : 1));
  for (long long k = 0; k < entries; ++k) {
    if (!next_data_line(in, line)) throw ParseError("matrix market: truncated entry list");
    std::istringstream ss(line);
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(ss >> i >> j >> v)) throw ParseError("matrix market: bad entry line");
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw ParseError("matrix market: entry index out of range");
    t.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), v});
    if (b.symmetry == "symmetric" && i != j)
      t.push_back({static_cast<Index>(j - 1), static_cast<Index>(i - 1), v});
  }
  return SparseMatrix::from_triplets(t, static_cast<Index>(rows), static_cast<Index>(cols));
}

SparseMatrix read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_matrix_market(in);
}

Vector read_matrix_market_vector(std::istream& in) {
  const Banner b = read_banner(in);
  if (b.format != "array") throw ParseError("matrix market: expected array format for a vector");
  std::string line;
  if (!next_data_line(in, line)) throw ParseError("matrix market: missing size line");
  long long rows = 0, cols = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> rows >> cols) || rows < 0 || cols != 1)
      throw ParseError("matrix market: vector must have exactly one column");
  }
  Vector v(static_cast<std::size_t>(rows));
  for (auto& x : v) {
    if (!next_data_line(in, line)) throw ParseError("matrix market: truncated vector");
    std::istringstream ss(line);
    if (!(ss >> x)) throw ParseError("matrix market: bad vector entry");
  }
  return v;
}

Vector read_matrix_market_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_matrix_market_vector(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n_rows() << ' ' << a.n_cols() << ' ' << a.nnz() << '\n';
  out << std::setprecision(17);
  auto offs = a.row_offsets();
  auto cols = a.col_indices();
  auto vals = a.values();
  for (Index i = 0; i < a.n_rows(); ++i)
    for (std::size_t k = offs[i]; k < offs[i + 1]; ++k)
      out << i + 1 << ' ' << cols[k] + 1 << ' ' << vals[k] << '\n';
}

}  // namespace plsolve
