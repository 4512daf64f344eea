#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gicar/cyclotomic.hpp"

namespace gicar {

/// Dense matrix over Q(zeta_N).  Small and exact; row-major storage.
class ExactMatrix {
public:
    ExactMatrix() : rows_(0), cols_(0) {}

    ExactMatrix(std::size_t rows, std::size_t cols, unsigned order = 1)
        : rows_(rows), cols_(cols), a_(rows * cols, CycScalar(Rat(0), order)) {}

    static ExactMatrix identity(std::size_t n, unsigned order = 1) {
        ExactMatrix m(n, n, order);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CycScalar(Rat(1), order);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    CycScalar& at(std::size_t r, std::size_t c) {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("ExactMatrix::at");
        return a_[r * cols_ + c];
    }
    const CycScalar& at(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("ExactMatrix::at");
        return a_[r * cols_ + c];
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.a_.size(); ++i)
            if (a.a_[i] != b.a_[i]) return false;
        return true;
    }
    friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("ExactMatrix: dimension mismatch in +");
        ExactMatrix out = a;
        for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += b.a_[i];
        return out;
    }

    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("ExactMatrix: dimension mismatch in -");
        ExactMatrix out = a;
        for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= b.a_[i];
        return out;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("ExactMatrix: dimension mismatch in *");
        ExactMatrix out(a.rows_, b.cols_);
        if (!a.a_.empty() && !b.a_.empty())
            out = ExactMatrix(a.rows_, b.cols_, std::max(a.a_[0].order(), b.a_[0].order()));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const CycScalar& x = a.at(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const CycScalar& y = b.at(k, j);
                    if (y.is_zero()) continue;
                    out.at(i, j) += x * y;
                }
            }
        return out;
    }

    friend ExactMatrix operator*(const CycScalar& s, const ExactMatrix& m) {
        ExactMatrix out = m;
        for (auto& x : out.a_) x *= s;
        return out;
    }

    ExactMatrix operator-() const { return CycScalar(-1) * *this; }

    /// Conjugate transpose (the involution of the scalar ring extended entrywise).
    ExactMatrix conj_transpose() const {
        ExactMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j).conj();
        return out;
    }

    ExactMatrix transpose() const {
        ExactMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    CycScalar trace() const {
        if (rows_ != cols_) throw std::invalid_argument("ExactMatrix::trace: not square");
        CycScalar t;
        for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    /// Columns glued side by side.
    static ExactMatrix hcat(const std::vector<ExactMatrix>& blocks) {
        if (blocks.empty()) return {};
        std::size_t cols = 0;
        for (const auto& b : blocks) cols += b.cols();
        ExactMatrix out(blocks[0].rows(), cols);
        std::size_t off = 0;
        for (const auto& b : blocks) {
            if (b.rows() != out.rows()) throw std::invalid_argument("ExactMatrix::hcat: row mismatch");
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, off + j) = b.at(i, j);
            off += b.cols();
        }
        return out;
    }

    static ExactMatrix vcat(const std::vector<ExactMatrix>& blocks) {
        if (blocks.empty()) return {};
        std::size_t rows = 0;
        for (const auto& b : blocks) rows += b.rows();
        ExactMatrix out(rows, blocks[0].cols());
        std::size_t off = 0;
        for (const auto& b : blocks) {
            if (b.cols() != out.cols()) throw std::invalid_argument("ExactMatrix::vcat: col mismatch");
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) out.at(off + i, j) = b.at(i, j);
            off += b.rows();
        }
        return out;
    }

    /// Row echelon form in place; returns pivot column indices.
    std::vector<std::size_t> row_reduce() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && at(p, c).is_zero()) ++p;
            if (p == rows_) continue;
            if (p != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
            CycScalar inv = at(r, c).inverse();
            for (std::size_t j = c; j < cols_; ++j) at(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c).is_zero()) continue;
                CycScalar f = at(i, c);
                for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        ExactMatrix m = *this;
        return m.row_reduce().size();
    }

    /// Exact basis of the right kernel, one column per basis vector.
    ExactMatrix kernel() const {
        ExactMatrix m = *this;
        auto pivots = m.row_reduce();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::size_t dim = cols_ - pivots.size();
        unsigned ord = a_.empty() ? 1 : a_[0].order();
        ExactMatrix out(cols_, dim, ord);
        std::size_t k = 0;
        for (std::size_t free_c = 0; free_c < cols_; ++free_c) {
            if (is_pivot[free_c]) continue;
            out.at(free_c, k) = CycScalar(Rat(1), ord);
            for (std::size_t pr = 0; pr < pivots.size(); ++pr)
                out.at(pivots[pr], k) = -m.at(pr, free_c);
            ++k;
        }
        return out;
    }

    /// Solve A x = b (b may have several columns); throws if inconsistent.
    ExactMatrix solve(const ExactMatrix& b) const {
        if (rows_ != b.rows()) throw std::invalid_argument("ExactMatrix::solve: row mismatch");
        ExactMatrix aug = hcat({*this, b});
        auto pivots = aug.row_reduce();
        ExactMatrix x(cols_, b.cols(), a_.empty() ? 1 : a_[0].order());
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
            if (pivots[pr] >= cols_) throw std::invalid_argument("ExactMatrix::solve: inconsistent system");
            for (std::size_t j = 0; j < b.cols(); ++j) x.at(pivots[pr], j) = aug.at(pr, cols_ + j);
        }
        return x;
    }

    ExactMatrix embedded(unsigned order) const {
        ExactMatrix out(rows_, cols_, order);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i].embedded(order);
        return out;
    }

private:
    std::size_t rows_, cols_;
    std::vector<CycScalar> a_;
};

}  // namespace gicar
