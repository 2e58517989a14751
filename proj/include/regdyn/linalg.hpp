#pragma once

#include <map>
#include <optional>
#include <vector>

#include "regdyn/scalar.hpp"

namespace regdyn {

/// Dense row-major matrix over Q or F_p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field = Field());
  static Matrix identity(std::size_t n, Field field = Field());
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows, Field field = Field());

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Field& field() const noexcept { return field_; }
  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_;
  std::vector<Rational> data_;
};

std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);
/// Throws core.SingularMatrix.
Matrix inverse(const Matrix& m);
/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& b);
std::vector<std::vector<Rational>> nullspace(const Matrix& m);

/// Incremental row echelon form for sparse rows; rank() counts inserted
/// independent rows.
class SparseEchelon {
 public:
  using Row = std::map<std::size_t, Rational>;
  explicit SparseEchelon(Field field = Field()) : field_(field) {}
  /// Reduces the row; returns true if it was independent and kept.
  bool insert(Row row);
  std::size_t rank() const noexcept { return pivots_.size(); }

 private:
  Field field_;
  std::map<std::size_t, Row> pivots_;  // pivot column -> row normalized to 1 at pivot
};

}  // namespace regdyn
