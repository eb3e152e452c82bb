/// @file csr.hpp
/// @brief Square sparse matrices in compressed-sparse-row storage.

#pragma once

#include <vector>

#include "grcstab/dense.hpp"

namespace grcstab {

/// One (row, col, value) coordinate entry.
struct Triplet {
    index_t row = 0;
    index_t col = 0;
    double value = 0.0;
};

/// Construction intermediary for assembling a square sparse matrix.
/// Entries may appear in any order; duplicates at the same coordinate
/// are summed on conversion.
struct TripletList {
    index_t n = 0;
    std::vector<Triplet> entries;
};

/// Square sparse matrix in CSR form.
///
/// Invariants (hold for every constructed instance):
///  - row_offsets has length n+1, is nondecreasing, row_offsets[0] = 0
///    and row_offsets[n] = nnz
///  - within each row, column indices are strictly increasing
///  - all column indices are < n
///
/// Instances are immutable after construction and safe to share across
/// threads.
class SparseMatrixCsr {
public:
    SparseMatrixCsr() : row_offsets_(1, 0) {}

    /// Builds CSR storage from a triplet list. Duplicate coordinates are
    /// summed in their order of appearance.
    /// Throws std::out_of_range for entries outside [0, n).
    static SparseMatrixCsr from_triplets(const TripletList& triplets);

    index_t n() const { return n_; }
    index_t nnz() const { return static_cast<index_t>(values_.size()); }

    const std::vector<index_t>& row_offsets() const { return row_offsets_; }
    const std::vector<index_t>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

    /// Entry lookup by coordinate (binary search within the row);
    /// returns 0 for positions not stored.
    double at(index_t row, index_t col) const;

    bool operator==(const SparseMatrixCsr& other) const = default;

private:
    index_t n_ = 0;
    std::vector<index_t> row_offsets_;
    std::vector<index_t> col_indices_;
    std::vector<double> values_;
};

/// y = A*x. Throws std::invalid_argument on dimension mismatch.
DenseVector matvec(const SparseMatrixCsr& A, const DenseVector& x);

/// y = A*x without allocating; y is resized to A.n().
void matvec_into(const SparseMatrixCsr& A, const DenseVector& x, DenseVector& y);

}  // namespace grcstab
