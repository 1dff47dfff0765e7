#include "slnc/ffla.hpp"

#include <random>
#include <sstream>
#include <utility>

#include "slnc/error.hpp"

namespace slnc {

Vec::Vec(Field f, std::vector<Value> entries) : field_(f), v_(std::move(entries)) {
    for (auto x : v_)
        if (x >= f.order()) throw InputError("vector entry out of field range");
}

Vec::Vec(Field f, std::initializer_list<std::int64_t> entries) : field_(f) {
    v_.reserve(entries.size());
    for (auto x : entries) v_.push_back(f.reduce(x));
}

Vec Vec::unit(Field f, std::size_t n, std::size_t i) {
    Vec v(f, n);
    v[i] = 1 % f.order();
    return v;
}

bool Vec::is_zero() const noexcept {
    for (auto x : v_)
        if (x != 0) return false;
    return true;
}

std::string Vec::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v_.size(); ++i) os << (i ? "," : "") << v_[i];
    os << ')';
    return os.str();
}

Vec operator+(const Vec& a, const Vec& b) {
    if (!(a.field() == b.field())) throw FieldMismatch();
    if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
    Vec r(a.field(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a.field().add(a[i], b[i]);
    return r;
}

Vec scale(Value s, const Vec& v) {
    Vec r(v.field(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v.field().mul(s, v[i]);
    return r;
}

Value dot(const Vec& a, const Vec& b) {
    if (!(a.field() == b.field())) throw FieldMismatch();
    if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
    const Field& f = a.field();
    Value s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

Mat::Mat(Field f, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : field_(f), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    a_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
        for (auto x : row) a_.push_back(f.reduce(x));
    }
}

Mat Mat::identity(Field f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % f.order();
    return m;
}

Mat Mat::from_columns(Field f, std::size_t rows, std::span<const Vec> cols) {
    Mat m(f, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
    return m;
}

Vec Mat::column(std::size_t c) const {
    Vec v(field_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Vec Mat::row(std::size_t r) const {
    Vec v(field_, cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
    return v;
}

void Mat::set_column(std::size_t c, const Vec& v) {
    if (!(v.field() == field_)) throw FieldMismatch();
    if (v.size() != rows_) throw DimensionMismatch("column length does not match matrix rows");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Mat Mat::top_rows(std::size_t n) const {
    if (n > rows_) throw DimensionMismatch("cannot take more rows than the matrix has");
    Mat m(field_, n, cols_);
    std::copy(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(n * cols_), m.a_.begin());
    return m;
}

Mat Mat::transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

std::string Mat::str() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
        os << '\n';
    }
    return os.str();
}

Mat operator*(const Mat& a, const Mat& b) {
    if (!(a.field() == b.field())) throw FieldMismatch();
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
    const Field& f = a.field();
    Mat m(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Value x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) = f.add(m(i, j), f.mul(x, b(k, j)));
        }
    return m;
}

Vec operator*(const Mat& a, const Vec& v) {
    if (!(a.field() == v.field())) throw FieldMismatch();
    if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
    const Field& f = a.field();
    Vec r(f, a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Value s = 0;
        for (std::size_t k = 0; k < a.cols(); ++k) s = f.add(s, f.mul(a(i, k), v[k]));
        r[i] = s;
    }
    return r;
}

Mat hstack(const Mat& a, const Mat& b) {
    if (!(a.field() == b.field())) throw FieldMismatch();
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack row mismatch");
    Mat m(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
    }
    return m;
}

Echelon rref(Mat m) {
    const Field f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        Value s = f.inv(m(row, col));
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(s, m(row, c));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            Value k = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) = f.sub(m(r, c), f.mul(k, m(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Mat invert(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("only square matrices can be inverted");
    const std::size_t n = m.rows();
    Echelon e = rref(hstack(m, Mat::identity(m.field(), n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) throw SingularMatrix();
    Mat inv(m.field(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
    return inv;
}

std::vector<Vec> nullspace_basis(const Mat& m) {
    Echelon e = rref(m);
    const Field& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec v(f, m.cols());
        v[free_col] = 1 % f.order();
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = f.neg(e.reduced(r, free_col));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve_nullspace_nonzero(const Mat& m) {
    auto basis = nullspace_basis(m);
    if (basis.empty()) return std::nullopt;
    return std::move(basis.front());
}

Subspace::Subspace(Field f, std::size_t ambient) : field_(f), n_(ambient) {}

Subspace::Subspace(Field f, std::size_t ambient, std::span<const Vec> generators) : field_(f), n_(ambient) {
    for (const auto& g : generators) extend(g);
}

Vec Subspace::reduce(Vec v) const {
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
        Value k = v[pivots_[i]];
        if (k == 0) continue;
        for (std::size_t c = 0; c < n_; ++c) v[c] = field_.sub(v[c], field_.mul(k, echelon_[i][c]));
    }
    return v;
}

bool Subspace::contains(const Vec& v) const {
    if (!(v.field() == field_)) throw FieldMismatch();
    if (v.size() != n_) throw DimensionMismatch("vector length does not match ambient dimension");
    return reduce(v).is_zero();
}

bool Subspace::extend(const Vec& v) {
    if (!(v.field() == field_)) throw FieldMismatch();
    if (v.size() != n_) throw DimensionMismatch("vector length does not match ambient dimension");
    Vec rem = reduce(v);
    std::size_t p = 0;
    while (p < n_ && rem[p] == 0) ++p;
    if (p == n_) return false;
    rem = scale(field_.inv(rem[p]), rem);
    // Keep every stored row clear of the new pivot so reduce() stays a single pass.
    for (auto& row : echelon_) {
        Value k = row[p];
        if (k == 0) continue;
        for (std::size_t c = 0; c < n_; ++c) row[c] = field_.sub(row[c], field_.mul(k, rem[c]));
    }
    echelon_.push_back(std::move(rem));
    pivots_.push_back(p);
    basis_.push_back(v);
    return true;
}

bool membership(const Subspace& s, const Vec& v) { return s.contains(v); }

Subspace sum(const Subspace& s, const Subspace& t) {
    if (!(s.field() == t.field())) throw FieldMismatch();
    if (s.ambient() != t.ambient()) throw DimensionMismatch("subspaces live in different ambient spaces");
    Subspace u = s;
    for (const auto& v : t.basis()) u.extend(v);
    return u;
}

std::size_t intersection_dim(const Subspace& s, const Subspace& t) {
    return s.dim() + t.dim() - sum(s, t).dim();
}

namespace {

bool outside_all(const Vec& v, std::span<const Subspace> avoid) {
    for (const auto& s : avoid)
        if (s.contains(v)) return false;
    return true;
}

}  // namespace

Vec pick_vector_avoiding(Field f, std::size_t n, std::span<const Subspace> avoid,
                         std::optional<std::uint64_t> seed) {
    for (const auto& s : avoid)
        if (s.ambient() != n) throw DimensionMismatch("subspace ambient dimension differs from n");
    const Value q = f.order();
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::uniform_int_distribution<Value> digit(0, q - 1);
        const std::size_t tries = 64 * (avoid.size() + 1);
        for (std::size_t t = 0; t < tries; ++t) {
            Vec v(f, n);
            for (std::size_t i = 0; i < n; ++i) v[i] = digit(rng);
            if (outside_all(v, avoid)) return v;
        }
    }
    Vec v(f, n);
    while (true) {
        if (outside_all(v, avoid)) return v;
        // Odometer increment, last entry least significant.
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++v[i] < q) break;
            v[i] = 0;
            if (i == 0) throw FieldTooSmall("the avoided subspaces cover all of F_q^n");
        }
        if (n == 0) throw FieldTooSmall("the avoided subspaces cover all of F_q^0");
    }
}

}  // namespace slnc
