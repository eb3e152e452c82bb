#include "grcstab/csr.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace grcstab {

SparseMatrixCsr SparseMatrixCsr::from_triplets(const TripletList& triplets) {
    if (triplets.n < 0) {
        throw std::out_of_range("from_triplets: negative dimension");
    }
    for (const Triplet& t : triplets.entries) {
        if (t.row < 0 || t.row >= triplets.n || t.col < 0 || t.col >= triplets.n) {
            throw std::out_of_range("from_triplets: entry (" + std::to_string(t.row) +
                                    ", " + std::to_string(t.col) +
                                    ") outside dimension " + std::to_string(triplets.n));
        }
    }

    std::vector<Triplet> sorted = triplets.entries;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrixCsr A;
    A.n_ = triplets.n;
    A.row_offsets_.assign(triplets.n + 1, 0);
    A.col_indices_.reserve(sorted.size());
    A.values_.reserve(sorted.size());

    // Duplicates are adjacent after sorting; stable sort keeps their input
    // order, so summation order is the order of appearance.
    for (std::size_t i = 0; i < sorted.size();) {
        double sum = sorted[i].value;
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j].row == sorted[i].row &&
               sorted[j].col == sorted[i].col) {
            sum += sorted[j].value;
            ++j;
        }
        A.col_indices_.push_back(sorted[i].col);
        A.values_.push_back(sum);
        ++A.row_offsets_[sorted[i].row + 1];
        i = j;
    }
    for (index_t row = 0; row < triplets.n; ++row) {
        A.row_offsets_[row + 1] += A.row_offsets_[row];
    }
    return A;
}

double SparseMatrixCsr::at(index_t row, index_t col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_) {
        throw std::out_of_range("SparseMatrixCsr::at: index out of range");
    }
    const auto begin = col_indices_.begin() + row_offsets_[row];
    const auto end = col_indices_.begin() + row_offsets_[row + 1];
    const auto it = std::lower_bound(begin, end, col);
    if (it == end || *it != col) {
        return 0.0;
    }
    return values_[it - col_indices_.begin()];
}

DenseVector matvec(const SparseMatrixCsr& A, const DenseVector& x) {
    DenseVector y;
    matvec_into(A, x, y);
    return y;
}

void matvec_into(const SparseMatrixCsr& A, const DenseVector& x, DenseVector& y) {
    if (static_cast<index_t>(x.size()) != A.n()) {
        throw std::invalid_argument("matvec: vector length " + std::to_string(x.size()) +
                                    " does not match dimension " + std::to_string(A.n()));
    }
    y.resize(x.size());
    const auto& offsets = A.row_offsets();
    const auto& cols = A.col_indices();
    const auto& vals = A.values();
    for (index_t i = 0; i < A.n(); ++i) {
        double sum = 0.0;
        for (index_t k = offsets[i]; k < offsets[i + 1]; ++k) {
            sum += vals[k] * x[cols[k]];
        }
        y[i] = sum;
    }
}

}  // namespace grcstab
