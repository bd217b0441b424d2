#pragma once

#include <span>
#include <vector>

#include "polyrel/scalar.hpp"

namespace polyrel {

/// Dense matrix of Scalars over one field. Row-major.
class ScalarMatrix {
public:
    ScalarMatrix(int rows, int cols, const FieldConfig& f)
        : rows_(rows), cols_(cols), field_(f), data_(static_cast<std::size_t>(rows) * cols, Scalar::zero(f)) {}

    static ScalarMatrix identity(int n, const FieldConfig& f);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldConfig& field() const { return field_; }

    Scalar& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Scalar& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    ScalarMatrix transposed() const;

    friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
    /// Exact entrywise equality (exact fields only).
    friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b);

private:
    int rows_, cols_;
    FieldConfig field_;
    std::vector<Scalar> data_;
};

/// Row vector times matrix (the row-action convention used throughout).
std::vector<Scalar> row_times(std::span<const Scalar> row, const ScalarMatrix& m);

/// Rank by fraction-free (Bareiss) elimination. Exact fields only; pivots are
/// exact nonzero tests, no tolerance exists.
int exact_rank(ScalarMatrix m);

/// Reduced row echelon form with pivot bookkeeping.
struct RowReduced {
    ScalarMatrix rref;
    std::vector<int> pivot_cols;
    int rank = 0;
};
RowReduced exact_rref(ScalarMatrix m);

/// Basis of { x : M x = 0 } (columns as unknowns), built from the rref.
std::vector<std::vector<Scalar>> exact_nullspace(const ScalarMatrix& m);

/// Solve A X = B for square invertible A; throws SingularMatrix otherwise.
ScalarMatrix exact_solve(const ScalarMatrix& a, const ScalarMatrix& b);

Scalar exact_determinant(const ScalarMatrix& m);

} // namespace polyrel
