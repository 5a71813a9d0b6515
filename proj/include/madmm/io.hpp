#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "madmm/trace.hpp"
#include "madmm/types.hpp"

namespace madmm {

// Matrix Market, coordinate real, symmetric or general. Symmetric files are
// expanded to full storage on read. All failures throw IoError.
SparseMatrix read_matrix_market_sparse(const std::filesystem::path& path);
void write_matrix_market_sparse(const std::filesystem::path& path, const SparseMatrix& m);

// Headerless comma-separated matrices, written with enough digits that a
// read-back reproduces the doubles exactly.
Matrix read_dense_csv(const std::filesystem::path& path);
void write_dense_csv(const std::filesystem::path& path, const Matrix& m);

// Dense square distance matrix with a first line holding n.
Matrix read_distance_csv(const std::filesystem::path& path);
void write_distance_csv(const std::filesystem::path& path, const Matrix& m);

// Columns: iter,objective,primal_residual,augmented_cost,seconds.
void write_trace_csv(const std::filesystem::path& path, const ConvergenceTrace& trace);

// Two space-separated columns, gnuplot-ready.
void write_xy_data(const std::filesystem::path& path,
                   const std::vector<std::pair<double, double>>& rows);

std::string format_double(double v);  // shortest exact round-trip form used above

}  // namespace madmm
