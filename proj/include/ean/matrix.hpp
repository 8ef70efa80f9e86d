#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "ean/error.hpp"
#include "ean/ring.hpp"

namespace ean {

// Dense matrix over a Ring. Sizes stay small (n <= ~12), so everything is
// cubic-time and exact; no blocked or sparse kernels.
class Matrix {
public:
    Matrix(std::uint32_t rows, std::uint32_t cols, Ring ring)
        : rows_(rows), cols_(cols), ring_(std::move(ring)), entries_(std::size_t(rows) * cols, 0) {
        require(rows >= 1 && cols >= 1, errc::bad_params, "matrix dimensions must be positive");
    }

    static Matrix identity(std::uint32_t n, const Ring& ring) {
        Matrix m(n, n, ring);
        for (std::uint32_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    // Row-major construction from signed integers, reduced into the ring.
    static Matrix from_rows(const Ring& ring, const std::vector<std::vector<std::int64_t>>& rows) {
        require(!rows.empty() && !rows[0].empty(), errc::bad_params, "empty matrix");
        Matrix m(std::uint32_t(rows.size()), std::uint32_t(rows[0].size()), ring);
        for (std::uint32_t i = 0; i < m.rows_; ++i) {
            require(rows[i].size() == m.cols_, errc::bad_params, "ragged matrix rows");
            for (std::uint32_t j = 0; j < m.cols_; ++j) m(i, j) = ring.from_int(rows[i][j]);
        }
        return m;
    }

    static Matrix from_columns(const Ring& ring, const std::vector<std::vector<elem>>& cols) {
        require(!cols.empty() && !cols[0].empty(), errc::bad_params, "empty matrix");
        Matrix m(std::uint32_t(cols[0].size()), std::uint32_t(cols.size()), ring);
        for (std::uint32_t j = 0; j < m.cols_; ++j) {
            require(cols[j].size() == m.rows_, errc::bad_params, "ragged matrix columns");
            for (std::uint32_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const Ring& ring() const { return ring_; }

    elem operator()(std::uint32_t i, std::uint32_t j) const { return entries_[std::size_t(i) * cols_ + j]; }
    elem& operator()(std::uint32_t i, std::uint32_t j) { return entries_[std::size_t(i) * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

    std::vector<elem> column(std::uint32_t j) const {
        std::vector<elem> out(rows_);
        for (std::uint32_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    std::vector<elem> row(std::uint32_t i) const {
        std::vector<elem> out(cols_);
        for (std::uint32_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
        return out;
    }

    Matrix operator*(const Matrix& rhs) const {
        require(ring_ == rhs.ring_, errc::dimension_mismatch, "matrix product over different rings");
        require(cols_ == rhs.rows_, errc::dimension_mismatch, "inner dimensions disagree");
        Matrix out(rows_, rhs.cols_, ring_);
        for (std::uint32_t i = 0; i < rows_; ++i)
            for (std::uint32_t k = 0; k < cols_; ++k) {
                const elem a = (*this)(i, k);
                if (!a) continue;
                for (std::uint32_t j = 0; j < rhs.cols_; ++j)
                    out(i, j) = ring_.add(out(i, j), ring_.mul(a, rhs(k, j)));
            }
        return out;
    }

    Matrix pow(std::uint64_t t) const {
        require(is_square(), errc::non_square, "matrix power of a non-square matrix");
        Matrix acc = identity(rows_, ring_);
        Matrix base = *this;
        while (t) {
            if (t & 1) acc = acc * base;
            base = base * base;
            t >>= 1;
        }
        return acc;
    }

    // Exact determinant. Field rings use elimination; modular rings lift the
    // entries to integers, run fraction-free Bareiss elimination, and reduce
    // the exact integer determinant mod q (division-free w.r.t. zero
    // divisors in Z_q).
    elem det() const {
        require(is_square(), errc::non_square, "determinant of a non-square matrix");
        if (ring_.kind() == RingKind::field) return det_field();
        return det_bareiss();
    }

    // Rank via elimination; needs a field (prime modular counts).
    std::uint32_t rank() const {
        require(ring_.is_math_field(), errc::rank_over_non_field,
                "rank is defined here only over fields");
        Matrix work = *this;
        std::uint32_t rank = 0;
        for (std::uint32_t col = 0; col < cols_ && rank < rows_; ++col) {
            std::uint32_t pivot = rank;
            while (pivot < rows_ && work(pivot, col) == 0) ++pivot;
            if (pivot == rows_) continue;
            work.swap_rows(pivot, rank);
            const elem inv = ring_.inv(work(rank, col));
            for (std::uint32_t i = rank + 1; i < rows_; ++i) {
                const elem factor = ring_.mul(work(i, col), inv);
                if (!factor) continue;
                for (std::uint32_t j = col; j < cols_; ++j)
                    work(i, j) = ring_.sub(work(i, j), ring_.mul(factor, work(rank, j)));
            }
            ++rank;
        }
        return rank;
    }

private:
    void swap_rows(std::uint32_t a, std::uint32_t b) {
        if (a == b) return;
        for (std::uint32_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    elem det_field() const {
        Matrix work = *this;
        const std::uint32_t n = rows_;
        elem det = 1;
        for (std::uint32_t col = 0; col < n; ++col) {
            std::uint32_t pivot = col;
            while (pivot < n && work(pivot, col) == 0) ++pivot;
            if (pivot == n) return 0;
            if (pivot != col) {
                work.swap_rows(pivot, col);
                det = ring_.neg(det);
            }
            det = ring_.mul(det, work(col, col));
            const elem inv = ring_.inv(work(col, col));
            for (std::uint32_t i = col + 1; i < n; ++i) {
                const elem factor = ring_.mul(work(i, col), inv);
                if (!factor) continue;
                for (std::uint32_t j = col; j < n; ++j)
                    work(i, j) = ring_.sub(work(i, j), ring_.mul(factor, work(col, j)));
            }
        }
        return det;
    }

    elem det_bareiss() const {
        const std::uint32_t n = rows_;
        // Hadamard bound check: the exact integer determinant must fit __int128.
        double log2_bound = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            double norm2 = 0.0;
            for (std::uint32_t j = 0; j < n; ++j) norm2 += double((*this)(i, j)) * double((*this)(i, j));
            log2_bound += 0.5 * std::log2(norm2 > 0 ? norm2 : 1.0);
        }
        require(log2_bound < 120.0, errc::cap_exceeded, "integer determinant would overflow");

        std::vector<__int128> work(std::size_t(n) * n);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) work[std::size_t(i) * n + j] = (*this)(i, j);
        auto at = [&](std::uint32_t i, std::uint32_t j) -> __int128& { return work[std::size_t(i) * n + j]; };

        int sign = 1;
        __int128 prev = 1;
        for (std::uint32_t k = 0; k + 1 < n; ++k) {
            if (at(k, k) == 0) {
                std::uint32_t pivot = k + 1;
                while (pivot < n && at(pivot, k) == 0) ++pivot;
                if (pivot == n) return 0;
                for (std::uint32_t j = 0; j < n; ++j) std::swap(at(k, j), at(pivot, j));
                sign = -sign;
            }
            for (std::uint32_t i = k + 1; i < n; ++i)
                for (std::uint32_t j = k + 1; j < n; ++j)
                    at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            prev = at(k, k);
        }
        __int128 det = at(n - 1, n - 1) * sign;
        const std::int64_t q = ring_.q();
        std::int64_t r = std::int64_t(det % q);
        if (r < 0) r += q;
        return elem(r);
    }

    std::uint32_t rows_;
    std::uint32_t cols_;
    Ring ring_;
    std::vector<elem> entries_;
};

}  // namespace ean
