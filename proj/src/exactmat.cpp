#include "polyrel/exactmat.hpp"

namespace polyrel {

namespace {

void require_exact(const FieldConfig& f) {
    if (!f.exact())
        throw FieldMismatch("exact linear algebra needs an exact field, got " + f.name());
}

} // namespace

ScalarMatrix ScalarMatrix::identity(int n, const FieldConfig& f) {
    ScalarMatrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

ScalarMatrix ScalarMatrix::transposed() const {
    ScalarMatrix t(cols_, rows_, field_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix size mismatch in product");
    if (a.field() != b.field()) throw FieldMismatch(a.field().name() + " vs " + b.field().name());
    ScalarMatrix out(a.rows(), b.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Scalar& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != b.at(i, j)) return false;
    return true;
}

std::vector<Scalar> row_times(std::span<const Scalar> row, const ScalarMatrix& m) {
    if (static_cast<int>(row.size()) != m.rows()) throw Error("row length mismatch");
    std::vector<Scalar> out(m.cols(), Scalar::zero(m.field()));
    for (int k = 0; k < m.rows(); ++k) {
        if (row[k].is_zero()) continue;
        for (int j = 0; j < m.cols(); ++j) out[j] += row[k] * m.at(k, j);
    }
    return out;
}

int exact_rank(ScalarMatrix m) {
    require_exact(m.field());
    const int rows = m.rows(), cols = m.cols();
    Scalar prev = Scalar::one(m.field());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r) {
            if (!m.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != rank)
            for (int c = 0; c < cols; ++c) std::swap(m.at(piv, c), m.at(rank, c));
        const Scalar pivot = m.at(rank, col);
        // Bareiss update: divisions by the previous pivot are exact
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c)
                m.at(r, c) = (m.at(r, c) * pivot - m.at(r, col) * m.at(rank, c)) / prev;
            m.at(r, col) = Scalar::zero(m.field());
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

RowReduced exact_rref(ScalarMatrix m) {
    require_exact(m.field());
    const int rows = m.rows(), cols = m.cols();
    RowReduced out{std::move(m), {}, 0};
    ScalarMatrix& a = out.rref;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = -1;
        for (int rr = r; rr < rows; ++rr) {
            if (!a.at(rr, col).is_zero()) {
                piv = rr;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r)
            for (int c = 0; c < cols; ++c) std::swap(a.at(piv, c), a.at(r, c));
        const Scalar inv = a.at(r, col).inv();
        for (int c = col; c < cols; ++c) a.at(r, c) *= inv;
        for (int rr = 0; rr < rows; ++rr) {
            if (rr == r || a.at(rr, col).is_zero()) continue;
            const Scalar f = a.at(rr, col);
            for (int c = col; c < cols; ++c) a.at(rr, c) -= f * a.at(r, c);
        }
        out.pivot_cols.push_back(col);
        ++r;
    }
    out.rank = r;
    return out;
}

std::vector<std::vector<Scalar>> exact_nullspace(const ScalarMatrix& m) {
    RowReduced red = exact_rref(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : red.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Scalar> v(cols, Scalar::zero(m.field()));
        v[fc] = Scalar::one(m.field());
        for (std::size_t r = 0; r < red.pivot_cols.size(); ++r)
            v[red.pivot_cols[r]] = -red.rref.at(static_cast<int>(r), fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

ScalarMatrix exact_solve(const ScalarMatrix& a, const ScalarMatrix& b) {
    require_exact(a.field());
    if (a.rows() != a.cols() || a.rows() != b.rows())
        throw Error("exact_solve expects square A and matching B");
    const int n = a.rows();
    ScalarMatrix aug(n, n + b.cols(), a.field());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) aug.at(i, n + j) = b.at(i, j);
    }
    RowReduced red = exact_rref(std::move(aug));
    if (red.rank < n) throw SingularMatrix("coefficient matrix has rank " + std::to_string(red.rank));
    ScalarMatrix x(n, b.cols(), a.field());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < b.cols(); ++j) x.at(i, j) = red.rref.at(i, n + j);
    return x;
}

Scalar exact_determinant(const ScalarMatrix& m) {
    require_exact(m.field());
    if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
    ScalarMatrix a = m;
    const int n = a.rows();
    Scalar det = Scalar::one(a.field());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
            if (!a.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0) return Scalar::zero(a.field());
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a.at(piv, c), a.at(col, c));
            det = -det;
        }
        const Scalar pivot = a.at(col, col);
        det *= pivot;
        const Scalar inv = pivot.inv();
        for (int r = col + 1; r < n; ++r) {
            if (a.at(r, col).is_zero()) continue;
            const Scalar f = a.at(r, col) * inv;
            for (int c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
        }
    }
    return det;
}

} // namespace polyrel
