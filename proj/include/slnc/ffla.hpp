#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slnc/gf.hpp"

namespace slnc {

/// Column vector over F_q.
class Vec {
public:
    Vec(Field f, std::size_t n) : field_(f), v_(n, 0) {}
    Vec(Field f, std::vector<Value> entries);
    Vec(Field f, std::initializer_list<std::int64_t> entries);

    static Vec unit(Field f, std::size_t n, std::size_t i);

    const Field& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return v_.size(); }
    Value operator[](std::size_t i) const { return v_[i]; }
    Value& operator[](std::size_t i) { return v_[i]; }
    const std::vector<Value>& entries() const noexcept { return v_; }

    bool is_zero() const noexcept;
    /// Entries as "(a,b,c)".
    std::string str() const;

    friend bool operator==(const Vec& a, const Vec& b) noexcept {
        return a.field_ == b.field_ && a.v_ == b.v_;
    }

private:
    Field field_;
    std::vector<Value> v_;
};

Vec operator+(const Vec& a, const Vec& b);
Vec scale(Value s, const Vec& v);
/// Row-vector times column-vector product.
Value dot(const Vec& a, const Vec& b);

/// Dense row-major matrix over F_q.
class Mat {
public:
    Mat(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    Mat(Field f, std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static Mat identity(Field f, std::size_t n);
    static Mat from_columns(Field f, std::size_t rows, std::span<const Vec> cols);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Value operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    Value& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

    Vec column(std::size_t c) const;
    Vec row(std::size_t r) const;
    void set_column(std::size_t c, const Vec& v);

    /// Rows [0, n) only.
    Mat top_rows(std::size_t n) const;
    Mat transpose() const;
    std::string str() const;

    friend bool operator==(const Mat& a, const Mat& b) noexcept {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Value> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& v);
/// Horizontal concatenation [a | b].
Mat hstack(const Mat& a, const Mat& b);

/// Reduced row echelon form with first-nonzero pivoting, scanning columns
/// left to right.
struct Echelon {
    Mat reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
Echelon rref(Mat m);

std::size_t rank(const Mat& m);
/// Throws SingularMatrix if m is not invertible, DimensionMismatch if not square.
Mat invert(const Mat& m);
/// Nonzero v with m*v = 0, or nullopt when the nullspace is trivial. The
/// first free column is set to 1 and all other free columns to 0.
std::optional<Vec> solve_nullspace_nonzero(const Mat& m);
/// One basis vector per free column, built the same way.
std::vector<Vec> nullspace_basis(const Mat& m);

/// Span of a list of vectors in F_q^n. The retained basis is the greedy
/// independent prefix of the generators, in the given order.
class Subspace {
public:
    Subspace(Field f, std::size_t ambient);
    Subspace(Field f, std::size_t ambient, std::span<const Vec> generators);

    const Field& field() const noexcept { return field_; }
    std::size_t ambient() const noexcept { return n_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Vec>& basis() const noexcept { return basis_; }

    bool contains(const Vec& v) const;
    /// Adds v to the span; returns false if v was already a member.
    bool extend(const Vec& v);

private:
    // Reduces v against the echelon rows; returns the remainder.
    Vec reduce(Vec v) const;

    Field field_;
    std::size_t n_;
    std::vector<Vec> basis_;
    std::vector<Vec> echelon_;  // pivot-normalised rows
    std::vector<std::size_t> pivots_;
};

bool membership(const Subspace& s, const Vec& v);
Subspace sum(const Subspace& s, const Subspace& t);
std::size_t intersection_dim(const Subspace& s, const Subspace& t);

/// Lexicographically smallest vector of F_q^n (entry 0 most significant)
/// lying outside every listed subspace. With an empty list this is the zero
/// vector. With a seed, random candidates are tried first and the scan is
/// the fallback. Throws FieldTooSmall if the union covers F_q^n.
Vec pick_vector_avoiding(Field f, std::size_t n, std::span<const Subspace> avoid,
                         std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace slnc
