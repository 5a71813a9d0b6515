#include "madmm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace madmm {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_double(const std::string& token, const std::filesystem::path& path) {
  double v = 0.0;
  const char* b = token.data();
  const char* e = b + token.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e)
    throw IoError(path.string() + ": malformed number '" + token + "'");
  return v;
}

long long parse_int(const std::string& token, const std::filesystem::path& path) {
  long long v = 0;
  const char* b = token.data();
  const char* e = b + token.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e)
    throw IoError(path.string() + ": malformed integer '" + token + "'");
  return v;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SparseMatrix read_matrix_market_sparse(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  strip_cr(line);
  std::vector<std::string> banner = split_ws(lower(line));
  if (banner.size() < 5 || banner[0] != "%%matrixmarket" || banner[1] != "matrix")
    throw IoError(path.string() + ": missing MatrixMarket banner");
  const std::string& layout = banner[2];
  const std::string& field = banner[3];
  const std::string& symmetry = banner[4];
  if (layout != "coordinate")
    throw IoError(path.string() + ": only coordinate layout is supported");
  if (field != "real" && field != "integer")
    throw IoError(path.string() + ": only real-valued matrices are supported");
  if (symmetry != "symmetric" && symmetry != "general")
    throw IoError(path.string() + ": only symmetric or general matrices are supported");
  const bool symmetric = symmetry == "symmetric";

  // Skip comments, then read "rows cols nnz".
  long long rows = 0, cols = 0, nnz = 0;
  for (;;) {
    if (!std::getline(in, line)) throw IoError(path.string() + ": missing size line");
    strip_cr(line);
    if (line.empty() || line[0] == '%') continue;
    std::vector<std::string> tok = split_ws(line);
    if (tok.size() != 3) throw IoError(path.string() + ": malformed size line");
    rows = parse_int(tok[0], path);
    cols = parse_int(tok[1], path);
    nnz = parse_int(tok[2], path);
    break;
  }
  if (rows < 1 || cols < 1 || nnz < 0)
    throw IoError(path.string() + ": invalid dimensions");

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  long long seen = 0;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty() || line[0] == '%') continue;
    std::vector<std::string> tok = split_ws(line);
    if (tok.size() != 3) throw IoError(path.string() + ": malformed entry line '" + line + "'");
    const long long i = parse_int(tok[0], path);
    const long long j = parse_int(tok[1], path);
    const double v = parse_double(tok[2], path);
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw IoError(path.string() + ": entry index out of range");
    trips.emplace_back(i - 1, j - 1, v);
    if (symmetric && i != j) trips.emplace_back(j - 1, i - 1, v);
    ++seen;
  }
  if (seen != nnz)
    throw IoError(path.string() + ": expected " + std::to_string(nnz) +
                  " entries, found " + std::to_string(seen));

  SparseMatrix m(rows, cols);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

void write_matrix_market_sparse(const std::filesystem::path& path, const SparseMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionError("write_matrix_market_sparse: only square matrices");
  SparseMatrix diff = SparseMatrix(m.transpose()) - m;
  if (diff.norm() > 0.0)
    throw std::invalid_argument("write_matrix_market_sparse: matrix is not symmetric");

  // Count and emit the lower triangle of the symmetric matrix.
  long long nnz = 0;
  for (int outer = 0; outer < m.outerSize(); ++outer)
    for (SparseMatrix::InnerIterator it(m, outer); it; ++it)
      if (it.row() >= it.col() && it.value() != 0.0) ++nnz;

  std::ofstream out = open_out(path);
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << m.rows() << " " << m.cols() << " " << nnz << "\n";
  for (int outer = 0; outer < m.outerSize(); ++outer)
    for (SparseMatrix::InnerIterator it(m, outer); it; ++it)
      if (it.row() >= it.col() && it.value() != 0.0)
        out << (it.row() + 1) << " " << (it.col() + 1) << " "
            << format_double(it.value()) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

Matrix read_dense_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    std::vector<std::string> tok = split_csv(line);
    std::vector<double> row;
    row.reserve(tok.size());
    for (const std::string& t : tok) row.push_back(parse_double(t, path));
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError(path.string() + ": ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(path.string() + ": empty matrix");
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

void write_dense_csv(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ",";
      out << format_double(m(i, j));
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

Matrix read_distance_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  strip_cr(line);
  const long long n = parse_int(line, path);
  if (n < 1) throw IoError(path.string() + ": invalid size header");
  Matrix m(n, n);
  for (long long i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw IoError(path.string() + ": expected " + std::to_string(n) + " rows");
    strip_cr(line);
    std::vector<std::string> tok = split_csv(line);
    if (static_cast<long long>(tok.size()) != n)
      throw IoError(path.string() + ": row " + std::to_string(i + 1) +
                    " has " + std::to_string(tok.size()) + " columns, expected " +
                    std::to_string(n));
    for (long long j = 0; j < n; ++j)
      m(i, j) = parse_double(tok[static_cast<std::size_t>(j)], path);
  }
  return m;
}

void write_distance_csv(const std::filesystem::path& path, const Matrix& m) {
  if (m.rows() != m.cols())
    throw DimensionError("write_distance_csv: matrix must be square");
  std::ofstream out = open_out(path);
  out << m.rows() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ",";
      out << format_double(m(i, j));
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_trace_csv(const std::filesystem::path& path, const ConvergenceTrace& trace) {
  std::ofstream out = open_out(path);
  out << "iter,objective,primal_residual,augmented_cost,seconds\n";
  for (const TraceRow& r : trace.rows)
    out << r.iter << "," << format_double(r.objective) << ","
        << format_double(r.primal_residual) << "," << format_double(r.augmented_cost)
        << "," << format_double(r.seconds) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

void write_xy_data(const std::filesystem::path& path,
                   const std::vector<std::pair<double, double>>& rows) {
  std::ofstream out = open_out(path);
  for (const auto& [x, y] : rows)
    out << format_double(x) << " " << format_double(y) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace madmm
