#pragma once

#include <optional>
#include <vector>

#include "rht/rational.hpp"

namespace rht {

// Sparse rational vector: (index, value) pairs sorted by index, values nonzero.
struct SparseVec {
    std::vector<std::pair<int, Rational>> entries;

    bool is_zero() const { return entries.empty(); }
    Rational at(int i) const {
        for (const auto& [j, v] : entries)
            if (j == i)
                return v;
        return Rational(0);
    }
};

// Column-major sparse matrix over exact rationals.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<SparseVec> columns;

    static SparseMatrix zero(int rows, int cols) {
        SparseMatrix m;
        m.rows = rows;
        m.cols = cols;
        m.columns.resize(cols);
        return m;
    }
    void set(int r, int c, const Rational& v);
    Rational at(int r, int c) const { return columns.at(c).at(r); }
};

SparseVec matrix_apply(const SparseMatrix& m, const SparseVec& x);

// Row echelon engine over big integers: fraction-free forward elimination
// (cross-multiplication with per-row content stripping), deterministic
// pivoting -- columns in ascending order, pivot row chosen by (nnz, insertion
// order). Back-substitution happens in rationals. The pivot column set is the
// lexicographically first independent column set and hence canonical.
class Echelon {
  public:
    using Row = std::vector<std::pair<int, BigInt>>;  // sorted by column

    Echelon(std::vector<Row> rows, int ncols);

    int rank() const { return static_cast<int>(pivot_cols_.size()); }
    int column_count() const { return ncols_; }
    const std::vector<int>& pivot_columns() const { return pivot_cols_; }
    bool is_pivot(int col) const;
    std::vector<int> free_columns() const;

    // Canonical kernel vector for a free column f: x_f = 1, all other free
    // coordinates 0; normalized to integer entries with content 1 and first
    // nonzero entry positive.
    SparseVec kernel_vector(int free_col) const;

    // Treats the last column as a right-hand side: particular solution with
    // all free variables zero, or nullopt when inconsistent.
    std::optional<SparseVec> solve_augmented() const;

  private:
    const Row* pivot_row(int col) const;
    int ncols_ = 0;
    std::vector<int> pivot_cols_;           // ascending
    std::vector<Row> pivot_rows_;           // parallel to pivot_cols_
    std::vector<int> pivot_of_col_;         // col -> index into pivot_rows_, -1
};

// Converts rational rows to integer rows (clearing denominators row-wise).
Echelon::Row integer_row(const std::vector<std::pair<int, Rational>>& entries);

// Echelon of the matrix as a map (columns -> coordinates): rows of the
// elimination are the matrix rows.
Echelon row_echelon(const SparseMatrix& m);

// Echelon whose input rows are the matrix COLUMNS viewed as coordinate
// vectors; its pivot columns are the leading coordinates of the column space.
Echelon column_space_echelon(const SparseMatrix& m);

// Kernel of the column-submatrix on `allowed` columns, re-indexed to the
// original column numbering. Canonical and normalized like kernel_vector.
std::vector<SparseVec> kernel_of_columns(const SparseMatrix& m,
                                         const std::vector<int>& allowed);

// Full exact solve: rank, canonical kernel basis, image basis (the original
// columns at the pivot positions) and a preimage solver.
class LinearSolution {
  public:
    explicit LinearSolution(SparseMatrix m);

    int rank() const { return ech_.rank(); }
    const std::vector<int>& pivot_columns() const { return ech_.pivot_columns(); }
    std::vector<int> free_columns() const { return ech_.free_columns(); }
    int kernel_dimension() const { return matrix_.cols - ech_.rank(); }

    std::vector<SparseVec> kernel_basis() const;
    std::vector<SparseVec> image_basis() const;

    // Solves M x = b; nullopt when b is outside the image.
    std::optional<SparseVec> preimage(const SparseVec& b) const;

    const SparseMatrix& matrix() const { return matrix_; }

  private:
    SparseMatrix matrix_;
    Echelon ech_;
};

LinearSolution solve_linear(const SparseMatrix& m);
int matrix_rank(const SparseMatrix& m);

}  // namespace rht
