#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "flmm/field.hpp"
#include "flmm/quadpoly.hpp"

namespace flmm {

/// Dense matrix over F_p, row-major.
class FieldMatrix {
public:
    FieldMatrix(PrimeField f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FieldMatrix identity(PrimeField f, std::size_t n) {
        FieldMatrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static FieldMatrix random(PrimeField f, std::size_t rows, std::size_t cols, Rng& rng) {
        FieldMatrix m(f, rows, cols);
        for (auto& x : m.a_) x = f.uniform(rng);
        return m;
    }

    PrimeField field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    u64& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    u64 at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    FieldMatrix transposed() const {
        FieldMatrix t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    bool is_zero() const {
        for (u64 x : a_)
            if (x != 0) return false;
        return true;
    }

    bool is_skew_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (at(r, r) != 0) return false;
            for (std::size_t c = r + 1; c < cols_; ++c)
                if (at(r, c) != field_.neg(at(c, r))) return false;
        }
        return true;
    }

    friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
        if (a.cols_ != b.rows_ || a.field_ != b.field_)
            throw std::invalid_argument("matrix product shape mismatch");
        FieldMatrix r(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                u64 aik = a.at(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) = a.field_.add(r.at(i, j), a.field_.mul(aik, b.at(k, j)));
            }
        return r;
    }

    friend FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.field_ != b.field_)
            throw std::invalid_argument("matrix sum shape mismatch");
        FieldMatrix r(a.field_, a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.field_.add(a.a_[i], b.a_[i]);
        return r;
    }

    bool operator==(const FieldMatrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    friend std::ostream& operator<<(std::ostream& os, const FieldMatrix& m) {
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r == 0 ? "[" : " ") << "[";
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m.at(r, c);
            os << "]" << (r + 1 == m.rows_ ? "]" : "\n");
        }
        return os;
    }

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<u64> a_;
};

/// Dense matrix with QuadPoly entries; carries the field so that an all-zero
/// matrix still knows its modulus.
class QuadPolyMatrix {
public:
    QuadPolyMatrix(PrimeField f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, QuadPoly::zero(f)) {}

    PrimeField field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    QuadPoly& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const QuadPoly& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& p : a_)
            if (!p.is_zero()) return false;
        return true;
    }

    bool is_skew_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (!at(r, r).is_zero()) return false;
            for (std::size_t c = r + 1; c < cols_; ++c)
                if (at(r, c) != at(c, r).negated()) return false;
        }
        return true;
    }

    FieldMatrix eval(const std::array<u64, 4>& t) const {
        FieldMatrix m(field_, rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m.at(r, c) = at(r, c).eval(t);
        return m;
    }

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<QuadPoly> a_;
};

}  // namespace flmm
