#include "grcstab/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace grcstab {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

enum class Symmetry { General, Symmetric, SkewSymmetric };

[[noreturn]] void fail(MmErrorCode code, const std::string& message) {
    throw MatrixMarketError(code, "matrix market: " + message);
}

}  // namespace

SparseMatrixCsr mm_read(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        fail(MmErrorCode::BadHeader, "empty stream");
    }

    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (lowercase(tag) != "%%matrixmarket") {
        fail(MmErrorCode::BadHeader, "missing %%MatrixMarket banner");
    }
    if (lowercase(object) != "matrix" || lowercase(format) != "coordinate") {
        fail(MmErrorCode::BadHeader, "only coordinate matrices are supported");
    }
    const std::string f = lowercase(field);
    if (f == "pattern" || f == "complex") {
        fail(MmErrorCode::UnsupportedField, "'" + f + "' field is not supported");
    }
    if (f != "real" && f != "integer") {
        fail(MmErrorCode::BadHeader, "unknown field '" + field + "'");
    }
    const std::string s = lowercase(symmetry);
    Symmetry sym;
    if (s == "general") {
        sym = Symmetry::General;
    } else if (s == "symmetric") {
        sym = Symmetry::Symmetric;
    } else if (s == "skew-symmetric") {
        sym = Symmetry::SkewSymmetric;
    } else {
        fail(MmErrorCode::UnsupportedSymmetry, "unsupported symmetry '" + symmetry + "'");
    }

    // Comment block, then the size line.
    index_t rows = -1, cols = -1, declared_nnz = -1;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '%') {
            continue;
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> declared_nnz)) {
            fail(MmErrorCode::BadHeader, "malformed size line '" + line + "'");
        }
        break;
    }
    if (rows < 0 || cols < 0 || declared_nnz < 0) {
        fail(MmErrorCode::BadHeader, "missing size line");
    }
    if (rows != cols) {
        fail(MmErrorCode::NotSquare, "matrix is " + std::to_string(rows) + "x" +
                                         std::to_string(cols));
    }

    TripletList triplets;
    triplets.n = rows;
    triplets.entries.reserve(sym == Symmetry::General ? declared_nnz : 2 * declared_nnz);

    index_t seen = 0;
    while (seen < declared_nnz && std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream entry(line);
        index_t i = 0, j = 0;
        double value = 0.0;
        if (!(entry >> i >> j >> value)) {
            fail(MmErrorCode::BadEntry, "malformed entry '" + line + "'");
        }
        if (i < 1 || i > rows || j < 1 || j > cols) {
            fail(MmErrorCode::IndexOutOfRange, "entry (" + std::to_string(i) + ", " +
                                                   std::to_string(j) + ") outside " +
                                                   std::to_string(rows) + "x" +
                                                   std::to_string(cols));
        }
        triplets.entries.push_back({i - 1, j - 1, value});
        if (i != j) {
            if (sym == Symmetry::Symmetric) {
                triplets.entries.push_back({j - 1, i - 1, value});
            } else if (sym == Symmetry::SkewSymmetric) {
                triplets.entries.push_back({j - 1, i - 1, -value});
            }
        }
        ++seen;
    }
    if (seen < declared_nnz) {
        fail(MmErrorCode::Truncated, "size line declares " + std::to_string(declared_nnz) +
                                         " entries, found " + std::to_string(seen));
    }

    return SparseMatrixCsr::from_triplets(triplets);
}

SparseMatrixCsr mm_read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open matrix file '" + path + "'");
    }
    return mm_read(in);
}

void mm_write(std::ostream& out, const SparseMatrixCsr& A) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << A.n() << " " << A.n() << " " << A.nnz() << "\n";
    char buf[64];
    for (index_t i = 0; i < A.n(); ++i) {
        for (index_t k = A.row_offsets()[i]; k < A.row_offsets()[i + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", A.values()[k]);
            out << (i + 1) << " " << (A.col_indices()[k] + 1) << " " << buf << "\n";
        }
    }
}

void mm_write_file(const std::string& path, const SparseMatrixCsr& A) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    mm_write(out, A);
}

}  // namespace grcstab
