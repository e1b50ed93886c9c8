#pragma once

// Exact linear algebra over an ExactField: dense Eigen matrices for the small
// global maps, and an incremental sparse echelon form for the large graded
// and jet spaces.

#include "ellthree/field.hpp"

#include <Eigen/Core>

#include <map>
#include <optional>
#include <vector>

namespace ellthree {

template <ExactField F>
using Matrix = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <ExactField F>
using Vector = Eigen::Matrix<F, Eigen::Dynamic, 1>;

/// Exact test; Eigen's isZero() needs a norm the exact scalars lack.
template <class Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j)))
                return false;
    return true;
}

template <ExactField F>
struct Echelon {
    Matrix<F> reduced;       // reduced row echelon form
    std::vector<int> pivots; // pivot column of each nonzero row
};

template <ExactField F>
Echelon<F> rref(Matrix<F> m) {
    Echelon<F> out;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = r; i < rows; ++i)
            if (!is_zero(m(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != r)
            m.row(piv).swap(m.row(r));
        const F inv = F(1) / m(r, c);
        for (Eigen::Index j = c; j < cols; ++j)
            m(r, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || is_zero(m(i, c)))
                continue;
            const F factor = m(i, c);
            for (Eigen::Index j = c; j < cols; ++j)
                if (!is_zero(m(r, j)))
                    m(i, j) -= factor * m(r, j);
        }
        out.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

template <ExactField F>
int rank(const Matrix<F>& m) {
    return static_cast<int>(rref<F>(m).pivots.size());
}

/// Columns span the right null space of m.
template <ExactField F>
Matrix<F> kernel(const Matrix<F>& m) {
    const auto e = rref<F>(m);
    const Eigen::Index cols = m.cols();
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int p : e.pivots)
        is_pivot[static_cast<size_t>(p)] = true;
    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index c = 0; c < cols; ++c)
        if (!is_pivot[static_cast<size_t>(c)])
            free_cols.push_back(c);
    Matrix<F> basis = Matrix<F>::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        const Eigen::Index fc = free_cols[k];
        basis(fc, static_cast<Eigen::Index>(k)) = F(1);
        for (size_t r = 0; r < e.pivots.size(); ++r)
            basis(e.pivots[r], static_cast<Eigen::Index>(k)) = -e.reduced(static_cast<Eigen::Index>(r), fc);
    }
    return basis;
}

/// Some x with m x = b, or nothing when b is outside the column space.
template <ExactField F>
std::optional<Vector<F>> solve(const Matrix<F>& m, const Vector<F>& b) {
    Matrix<F> aug(m.rows(), m.cols() + 1);
    aug << m, b;
    const auto e = rref<F>(aug);
    Vector<F> x = Vector<F>::Zero(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == m.cols())
            return std::nullopt;
        x(e.pivots[r]) = e.reduced(static_cast<Eigen::Index>(r), m.cols());
    }
    return x;
}

/// Dimension of the cokernel of the map C^cols -> C^rows given by m.
template <ExactField F>
int cokernel_dim(const Matrix<F>& m) {
    return static_cast<int>(m.rows()) - rank<F>(m);
}

/// Sparse vector keyed by column index.
template <ExactField F>
using SparseVec = std::map<int, F>;

/// Row echelon form built one vector at a time. Each stored row has its
/// leading (smallest) column as pivot, normalised to 1. Pivot columns are
/// canonical for the spanned subspace given the column order.
template <ExactField F>
class SparseEchelon {
public:
    /// Adds v to the span; returns false when v was already in it.
    bool insert(SparseVec<F> v) {
        v = reduce(std::move(v));
        if (v.empty())
            return false;
        const int pivot = v.begin()->first;
        const F inv = F(1) / v.begin()->second;
        for (auto& [c, x] : v)
            x *= inv;
        rows_.emplace(pivot, std::move(v));
        return true;
    }

    /// Normal form of v: no entries left in pivot columns.
    SparseVec<F> reduce(SparseVec<F> v) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto row = rows_.find(it->first);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            const F factor = it->second;
            const int col = it->first;
            for (const auto& [c, x] : row->second) {
                auto [pos, inserted] = v.try_emplace(c, F(0));
                pos->second -= factor * x;
            }
            // erase zeros created at or after col; entries before col are untouched
            for (auto j = v.find(col); j != v.end();) {
                if (is_zero(j->second))
                    j = v.erase(j);
                else
                    ++j;
            }
            it = v.lower_bound(col);
        }
        return v;
    }

    bool contains(const SparseVec<F>& v) const { return reduce(v).empty(); }
    int rank() const { return static_cast<int>(rows_.size()); }
    bool is_pivot(int col) const { return rows_.count(col) != 0; }
    std::vector<int> pivots() const {
        std::vector<int> out;
        for (const auto& kv : rows_)
            out.push_back(kv.first);
        return out;
    }

private:
    std::map<int, SparseVec<F>> rows_;
};

} // namespace ellthree
