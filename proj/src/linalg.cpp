#include "regdyn/linalg.hpp"

#include "regdyn/error.hpp"

namespace regdyn {

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Rational(0)) {}

Matrix Matrix::identity(std::size_t n, Field field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows, Field field) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  Matrix m(rows.size(), c, field);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error("core", ErrorCode::DimensionError, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = field.reduce(rows[i][j]);
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("core", ErrorCode::DimensionError, "matrix shapes do not chain");
  Matrix r(rows_, o.cols_, field_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  }
  for (auto& v : r.data_) v = field_.reduce(v);
  return r;
}

std::vector<Rational> Matrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw Error("core", ErrorCode::DimensionError, "vector length mismatch");
  std::vector<Rational> out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    out[i] = field_.reduce(out[i]);
  }
  return out;
}

namespace {

struct Reduced {
  Matrix m;
  std::vector<std::size_t> pivot_cols;
  bool swapped_odd = false;
};

// Gauss-Jordan to reduced row echelon form.
Reduced rref(Matrix m) {
  const Field f = m.field();
  Reduced out{m, {}, false};
  Matrix& a = out.m;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
      out.swapped_odd = !out.swapped_odd;
    }
    const Rational inv = f.inverse(a.at(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) = f.reduce(a.at(row, j) * inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a.at(i, col) == 0) continue;
      const Rational factor = a.at(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) {
        a.at(i, j) = f.reduce(a.at(i, j) - factor * a.at(row, j));
      }
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

}  // namespace

std::size_t rank(const Matrix& m) { return rref(m).pivot_cols.size(); }

Rational determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("core", ErrorCode::DimensionError, "determinant of a non-square matrix");
  const Field f = m.field();
  Matrix a = m;
  Rational det = 1;
  for (std::size_t col = 0; col < a.cols(); ++col) {
    std::size_t piv = col;
    while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows()) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(col, j));
      det = -det;
    }
    det = f.reduce(det * a.at(col, col));
    const Rational inv = f.inverse(a.at(col, col));
    for (std::size_t i = col + 1; i < a.rows(); ++i) {
      if (a.at(i, col) == 0) continue;
      const Rational factor = f.reduce(a.at(i, col) * inv);
      for (std::size_t j = col; j < a.cols(); ++j) {
        a.at(i, j) = f.reduce(a.at(i, j) - factor * a.at(col, j));
      }
    }
  }
  return f.reduce(det);
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("core", ErrorCode::DimensionError, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n, m.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  Reduced r = rref(aug);
  if (r.pivot_cols.size() < n || r.pivot_cols[n - 1] != n - 1) {
    throw Error("core", ErrorCode::SingularMatrix, "matrix is not invertible");
  }
  Matrix inv(n, n, m.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.m.at(i, n + j);
  }
  return inv;
}

std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& b) {
  if (b.size() != m.rows()) throw Error("core", ErrorCode::DimensionError, "right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1, m.field());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = m.field().reduce(b[i]);
  }
  Reduced r = rref(aug);
  std::vector<Rational> x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
    if (r.pivot_cols[i] == m.cols()) return std::nullopt;
    x[r.pivot_cols[i]] = r.m.at(i, m.cols());
  }
  return x;
}

std::vector<std::vector<Rational>> nullspace(const Matrix& m) {
  Reduced r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
      v[r.pivot_cols[i]] = m.field().reduce(-r.m.at(i, free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool SparseEchelon::insert(Row row) {
  for (auto it = row.begin(); it != row.end();) {
    if (field_.reduce(it->second) == 0) {
      it = row.erase(it);
    } else {
      it->second = field_.reduce(it->second);
      ++it;
    }
  }
  while (!row.empty()) {
    const std::size_t lead = row.begin()->first;
    auto piv = pivots_.find(lead);
    if (piv == pivots_.end()) {
      const Rational inv = field_.inverse(row.begin()->second);
      for (auto& [c, v] : row) v = field_.reduce(v * inv);
      pivots_.emplace(lead, std::move(row));
      return true;
    }
    const Rational factor = row.begin()->second;
    for (const auto& [c, v] : piv->second) {
      auto [slot, inserted] = row.try_emplace(c, 0);
      slot->second = field_.reduce(slot->second - factor * v);
      if (slot->second == 0) row.erase(slot);
    }
  }
  return false;
}

}  // namespace regdyn
