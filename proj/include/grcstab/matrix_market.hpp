/// @file matrix_market.hpp
/// @brief Matrix Market coordinate-format reader and writer.
///
/// Supported inputs: ASCII coordinate files with real or integer fields
/// and general, symmetric or skew-symmetric symmetry, square matrices
/// only. Symmetric entries are expanded to both triangles (skew with a
/// sign flip) and 1-based indices are converted to 0-based.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "grcstab/csr.hpp"

namespace grcstab {

enum class MmErrorCode {
    BadHeader,        ///< banner/size line missing or not coordinate format
    UnsupportedField, ///< pattern or complex field
    UnsupportedSymmetry, ///< hermitian (or unknown) symmetry
    NotSquare,
    IndexOutOfRange,
    Truncated,        ///< fewer entries than the size line declares
    BadEntry,         ///< unparseable entry line
};

class MatrixMarketError : public std::runtime_error {
public:
    MatrixMarketError(MmErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    MmErrorCode code() const { return code_; }

private:
    MmErrorCode code_;
};

/// Parses a Matrix Market coordinate stream into CSR form.
/// Throws MatrixMarketError with the matching code on malformed input.
SparseMatrixCsr mm_read(std::istream& in);

/// Opens and parses a file; throws std::runtime_error if it cannot be
/// opened, MatrixMarketError on malformed content.
SparseMatrixCsr mm_read_file(const std::string& path);

/// Writes CSR content as "coordinate real general" with 1-based indices
/// and 17 significant digits, so that re-reading reproduces the matrix
/// exactly.
void mm_write(std::ostream& out, const SparseMatrixCsr& A);

void mm_write_file(const std::string& path, const SparseMatrixCsr& A);

}  // namespace grcstab
