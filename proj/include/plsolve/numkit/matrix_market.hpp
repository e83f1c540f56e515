#pragma once

#include <iosfwd>
#include <string>

#include "plsolve/numkit/sparse_matrix.hpp"

namespace plsolve {

/// Reads a Matrix Market `coordinate real general` matrix (`symmetric` is
/// accepted and expanded). Throws ParseError on malformed input.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market_file(const std::string& path);

/// Reads a Matrix Market `array real general` column vector.
Vector read_matrix_market_vector(std::istream& in);
Vector read_matrix_market_vector_file(const std::string& path);

void write_matrix_market(std::ostream& out, const SparseMatrix& a);

}  // namespace plsolve
