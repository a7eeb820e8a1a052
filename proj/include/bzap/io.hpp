#pragma once

#include "bzap/block_model.hpp"

#include <filesystem>
#include <iosfwd>

namespace bzap::io {

// Plain-text formats, 17 significant digits:
//   vector: first line "n", then n values, one per line
//   matrix: first line "m n", then m lines of n space-separated values

void write_vector(std::ostream& out, const Vector& v);
Vector read_vector(std::istream& in);

void write_matrix(std::ostream& out, const Matrix& M);
Matrix read_matrix(std::istream& in);

void save_vector(const std::filesystem::path& path, const Vector& v);
Vector load_vector(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& M);
Matrix load_matrix(const std::filesystem::path& path);

} // namespace bzap::io
