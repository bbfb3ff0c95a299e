#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "torelli/field.hpp"

namespace torelli {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a single Field.
class Matrix {
 public:
  Matrix() : field_(Field::rationals()) {}
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(Field field, std::size_t n);
  /// All rows must have the same length; entries must belong to `field`.
  static Matrix from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols);

  Field field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transposed() const;
  /// Rows [r0, r1) and columns [c0, c1).
  Matrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

  Vector apply(std::span<const Scalar> v) const;
  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend bool operator==(const Matrix& lhs, const Matrix& rhs);

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RowEchelon {
  Matrix reduced;                    // canonical RREF, zero rows last
  std::vector<std::size_t> pivots;   // strictly increasing pivot columns
  std::size_t rank = 0;
};

/// Canonical reduced row echelon form. Over Q the elimination runs on
/// primitive integer rows and normalizes pivots only at the end.
RowEchelon rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Rank modulo p of a rational matrix whose rows were first scaled to
/// primitive integer vectors. Never exceeds the rank over Q, so a full value
/// certifies full rank over Q.
std::size_t rank_mod(const Matrix& m, std::uint32_t p);

std::optional<Matrix> inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

/// Linear subspace of K^ambient, stored as its canonical RREF basis so that
/// set equality is entry-wise equality.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(Field field, std::size_t ambient);
  static Subspace full(Field field, std::size_t ambient);
  static Subspace span(Field field, std::size_t ambient, const std::vector<Vector>& generators);
  static Subspace row_space(const Matrix& m);

  Field field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  std::vector<Vector> basis_vectors() const;
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// {w : <w, v> = 0 for all v in this}, under the standard pairing.
  Subspace annihilator() const;

  friend bool operator==(const Subspace& lhs, const Subspace& rhs) = default;

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Right null space {v : Mv = 0}.
Subspace kernel(const Matrix& m);

/// One solution of Mx = b (free variables set to zero), or nullopt when the
/// system is inconsistent.
std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b);

bool member(const Subspace& s, std::span<const Scalar> v);
bool subspace_equal(const Subspace& s, const Subspace& t);

}  // namespace torelli
