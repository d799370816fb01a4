#pragma once

/**
 * @file matrix.hpp
 * @brief Dense row-major matrix of exact rationals, plus its text format.
 *
 * Text format (CLI I/O): a header line "rows cols", then `rows` lines of
 * whitespace-separated rationals written "p/q" or "p". write_matrix emits
 * single spaces and a trailing newline per row, so reading and writing a
 * canonical file is byte-identical.
 */

#include <cstddef>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace mpgraph {

class RatMatrix {
public:
    RatMatrix() = default;

    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw ShapeError("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static RatMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RatMatrix constant(std::size_t rows, std::size_t cols, const Rational& v) {
        RatMatrix m(rows, cols);
        for (auto& x : m.data_) x = v;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Rational> entries() const noexcept { return data_; }
    std::span<Rational> entries() noexcept { return data_; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_integral() const {
        for (const auto& x : data_)
            if (!x.is_integer()) return false;
        return true;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
        RatMatrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const RatMatrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeError("block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    /// Selects rows and columns: result(i, j) = this(rows[i], cols[j]).
    RatMatrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
        RatMatrix s(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
        return s;
    }

    /// Pᵀ·M·P for the permutation matrix P with P(perm[i], i) = 1,
    /// i.e. result(i, j) = this(perm[i], perm[j]).
    RatMatrix permuted(std::span<const std::size_t> perm) const { return select(perm, perm); }

    RatMatrix& operator+=(const RatMatrix& o) {
        check_same_shape(o, "+");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    RatMatrix& operator-=(const RatMatrix& o) {
        check_same_shape(o, "-");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    RatMatrix& operator*=(const Rational& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    RatMatrix operator-() const {
        RatMatrix r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }

    friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
    friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
    friend RatMatrix operator*(RatMatrix a, const Rational& s) { return a *= s; }
    friend RatMatrix operator*(const Rational& s, RatMatrix a) { return a *= s; }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_)
            throw ShapeError("mat_mul: " + a.shape_str() + " times " + b.shape_str());
        RatMatrix c(a.rows_, b.cols_);
        mpq_class acc;
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < b.cols_; ++j) {
                acc = 0;
                for (std::size_t k = 0; k < a.cols_; ++k) {
                    const auto& x = a(i, k);
                    if (x.is_zero()) continue;
                    const auto& y = b(k, j);
                    if (y.is_zero()) continue;
                    acc += x.value() * y.value();
                }
                c(i, j) = Rational::from_canonical(acc);
            }
        }
        return c;
    }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

private:
    void check_same_shape(const RatMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ShapeError(std::string("operator") + op + ": " + shape_str() + " vs " + o.shape_str());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) { return a * b; }

/// [[a, b], [c, d]] from four blocks with matching edge dimensions.
inline RatMatrix block_matrix(const RatMatrix& a, const RatMatrix& b,
                              const RatMatrix& c, const RatMatrix& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
        b.cols() != d.cols())
        throw ShapeError("block_matrix: inconsistent block shapes");
    RatMatrix m(a.rows() + c.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    m.set_block(a.rows(), 0, c);
    m.set_block(a.rows(), a.cols(), d);
    return m;
}

/// Row-major conversion to doubles.
inline std::vector<double> to_doubles(const RatMatrix& m) {
    std::vector<double> out;
    out.reserve(m.rows() * m.cols());
    for (const auto& x : m.entries()) out.push_back(x.to_double());
    return out;
}

// ---------------------------------------------------------------------------
// Text format

inline void write_matrix(std::ostream& os, const RatMatrix& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j).str();
        }
        os << '\n';
    }
}

inline std::string to_string(const RatMatrix& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

inline RatMatrix read_matrix(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError("matrix: missing header line", 1);
    std::istringstream header(line);
    long long rows = -1, cols = -1;
    std::string extra;
    if (!(header >> rows >> cols) || rows < 0 || cols < 0 || (header >> extra))
        throw ParseError("matrix: header must be 'rows cols'", line_no);

    RatMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!next_line()) throw ParseError("matrix: missing row " + std::to_string(i), line_no + 1);
        std::istringstream row(line);
        std::string tok;
        std::size_t j = 0;
        while (row >> tok) {
            if (j == m.cols())
                throw ParseError("matrix: too many entries in row " + std::to_string(i), line_no);
            try {
                m(i, j++) = Rational::parse(tok);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), line_no);
            }
        }
        if (j != m.cols())
            throw ParseError("matrix: too few entries in row " + std::to_string(i), line_no);
    }
    if (next_line()) throw ParseError("matrix: trailing content", line_no);
    return m;
}

inline RatMatrix parse_matrix(const std::string& text) {
    std::istringstream is(text);
    return read_matrix(is);
}

}  // namespace mpgraph
