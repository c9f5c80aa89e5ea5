#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "liftratio/errors.hpp"
#include "liftratio/poly.hpp"

namespace liftratio {

/// Dense square matrix over a commutative ring (`Poly` or `Rational`).
/// Optional row/column labels travel with the rows and columns.
template <class Ring>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim, Ring(0)) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = Ring(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<Ring>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw DomainError("matrix rows must form a square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  Ring& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Ring& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  Ring& at(std::size_t i, std::size_t j) {
    check(i, j);
    return (*this)(i, j);
  }
  const Ring& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return (*this)(i, j);
  }

  const std::optional<std::vector<std::string>>& row_labels() const noexcept { return row_labels_; }
  const std::optional<std::vector<std::string>>& col_labels() const noexcept { return col_labels_; }

  void set_labels(std::vector<std::string> rows, std::vector<std::string> cols) {
    validate_labels(rows);
    validate_labels(cols);
    row_labels_ = std::move(rows);
    col_labels_ = std::move(cols);
  }
  void set_labels(const std::vector<std::string>& both) { set_labels(both, both); }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    same_dim(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    same_dim(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    same_dim(a, b);
    Matrix r(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i)
      for (std::size_t k = 0; k < a.dim_; ++k) {
        if (a(i, k) == Ring(0)) continue;
        for (std::size_t j = 0; j < a.dim_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

  /// Entry-wise equality; labels are not compared.
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_)
      throw IndexOutOfRange("index (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside a " + std::to_string(dim_) + "x" + std::to_string(dim_) + " matrix");
  }
  void validate_labels(const std::vector<std::string>& labels) const {
    if (labels.size() != dim_) throw DomainError("label count does not match matrix dimension");
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size())
      throw DomainError("matrix labels must be distinct");
  }
  static void same_dim(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) throw DomainError("matrix dimensions differ");
  }

  std::size_t dim_ = 0;
  std::vector<Ring> entries_;
  std::optional<std::vector<std::string>> row_labels_, col_labels_;
};

using RingMatrix = Matrix<Poly>;
using RationalMatrix = Matrix<Rational>;

/// The minor with row `row` and column `col` removed, labels carried over.
template <class Ring>
Matrix<Ring> delete_row_col(const Matrix<Ring>& m, std::size_t row, std::size_t col) {
  if (row >= m.dim() || col >= m.dim())
    throw IndexOutOfRange("cannot delete row " + std::to_string(row) + ", column " + std::to_string(col) +
                          " of a " + std::to_string(m.dim()) + "x" + std::to_string(m.dim()) + " matrix");
  const std::size_t n = m.dim() - 1;
  Matrix<Ring> out(n);
  for (std::size_t i = 0, si = 0; i < n; ++i, ++si) {
    if (si == row) ++si;
    for (std::size_t j = 0, sj = 0; j < n; ++j, ++sj) {
      if (sj == col) ++sj;
      out(i, j) = m(si, sj);
    }
  }
  if (m.row_labels() && m.col_labels()) {
    auto rows = *m.row_labels();
    auto cols = *m.col_labels();
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(row));
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(col));
    out.set_labels(std::move(rows), std::move(cols));
  }
  return out;
}

enum class DetMethod { berkowitz, cofactor };

/// Largest dimension the cofactor expansion accepts.
inline constexpr std::size_t kCofactorMaxDim = 7;

namespace detail {

// Characteristic polynomial by Berkowitz's method. coeffs[i] multiplies
// lambda^(n-i) in det(lambda*I - A); only ring operations are used.
template <class Ring>
std::vector<Ring> berkowitz_charpoly(const Matrix<Ring>& a) {
  const std::size_t n = a.dim();
  std::vector<Ring> coeffs{Ring(1)};
  for (std::size_t r = 0; r < n; ++r) {
    // Leading (r+1)x(r+1) block split as [[M, S], [R, a_rr]] with M of size r.
    std::vector<Ring> toeplitz(r + 2, Ring(0));
    toeplitz[0] = Ring(1);
    toeplitz[1] = -a(r, r);
    std::vector<Ring> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = a(i, r);
    for (std::size_t step = 0; step < r; ++step) {
      Ring dot(0);
      for (std::size_t i = 0; i < r; ++i) dot += a(r, i) * col[i];
      toeplitz[step + 2] = -dot;
      if (step + 1 < r) {
        std::vector<Ring> next(r, Ring(0));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) next[i] += a(i, j) * col[j];
        col = std::move(next);
      }
    }
    std::vector<Ring> updated(r + 2, Ring(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) updated[i] += toeplitz[i - j] * coeffs[j];
    coeffs = std::move(updated);
  }
  return coeffs;
}

template <class Ring>
Ring cofactor_det(const Matrix<Ring>& m) {
  const std::size_t n = m.dim();
  if (n == 0) return Ring(1);
  if (n == 1) return m(0, 0);
  Ring total(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == Ring(0)) continue;
    Ring term = m(0, j) * cofactor_det(delete_row_col(m, 0, j));
    if (j % 2 == 0) total += term;
    else total -= term;
  }
  return total;
}

}  // namespace detail

/// Exact determinant. Berkowitz is division-free and O(n^4); cofactor
/// expansion is exponential and kept as an independent check (dim <= 7).
/// The 0x0 determinant is 1.
template <class Ring>
Ring determinant(const Matrix<Ring>& m, DetMethod method = DetMethod::berkowitz) {
  if (method == DetMethod::cofactor) {
    if (m.dim() > kCofactorMaxDim) throw DomainError("cofactor expansion limited to dimension 7");
    return detail::cofactor_det(m);
  }
  auto coeffs = detail::berkowitz_charpoly(m);
  Ring det = std::move(coeffs.back());
  return m.dim() % 2 == 0 ? det : -det;
}

/// Row-major rendering, one row per line, with labels when present.
template <class Ring>
std::string to_string(const Matrix<Ring>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (m.row_labels()) out += (*m.row_labels())[i] + ": ";
    out += '[';
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out += ", ";
      out += m(i, j).to_string();
    }
    out += "]\n";
  }
  return out;
}

}  // namespace liftratio
