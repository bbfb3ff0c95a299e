#include "torelli/linalg.hpp"

#include <algorithm>
#include <utility>

#include "torelli/errors.hpp"

namespace torelli {

namespace {

using IntRow = std::vector<mpz_class>;
using ModRow = std::vector<std::uint32_t>;

// Large primes used to certify full rank before falling back to exact work.
constexpr std::uint32_t kCertificatePrime = 2147483647u;

bool is_zero_row(const IntRow& row) {
  return std::all_of(row.begin(), row.end(), [](const mpz_class& z) { return sgn(z) == 0; });
}

void make_primitive(IntRow& row) {
  mpz_class g = 0;
  for (const auto& z : row) {
    if (sgn(z) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (auto& z : row)
    if (sgn(z) != 0) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
}

IntRow integer_row(const Matrix& m, std::size_t r) {
  mpz_class lcm = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const mpq_class& q = m(r, c).rational();
    if (q.get_den() != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  IntRow row(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const mpq_class& q = m(r, c).rational();
    if (sgn(q) == 0) continue;
    row[c] = q.get_num() * (lcm / q.get_den());
  }
  make_primitive(row);
  return row;
}

std::vector<IntRow> integer_rows(const Matrix& m) {
  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    IntRow row = integer_row(m, r);
    if (!is_zero_row(row)) rows.push_back(std::move(row));
  }
  return rows;
}

// rows[target] <- pivot_value * rows[target] - rows[target][c] * rows[pivot], made primitive.
void eliminate(IntRow& target, const IntRow& pivot, std::size_t c) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), pivot[c].get_mpz_t(), target[c].get_mpz_t());
  const mpz_class a = pivot[c] / g;
  const mpz_class b = target[c] / g;
  for (std::size_t j = 0; j < target.size(); ++j) {
    if (sgn(pivot[j]) == 0) {
      if (sgn(target[j]) != 0) target[j] *= a;
      continue;
    }
    target[j] = a * target[j] - b * pivot[j];
  }
  make_primitive(target);
}

// Fraction-free elimination on primitive integer rows. With `full` the pivot
// column is cleared above as well (Gauss-Jordan).
std::vector<std::size_t> integer_eliminate(std::vector<IntRow>& rows, std::size_t cols,
                                           bool full) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t found = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (sgn(rows[r][c]) != 0) {
        found = r;
        break;
      }
    if (found == rows.size()) continue;
    std::swap(rows[rank], rows[found]);
    if (sgn(rows[rank][c]) < 0)
      for (auto& z : rows[rank]) z = -z;
    const std::size_t first = full ? 0 : rank + 1;
    bool emptied = false;
    for (std::size_t r = first; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      eliminate(rows[r], rows[rank], c);
      if (r > rank && is_zero_row(rows[r])) emptied = true;
    }
    if (emptied) {
      std::size_t keep = rank + 1;
      for (std::size_t r = rank + 1; r < rows.size(); ++r)
        if (!is_zero_row(rows[r])) {
          if (keep != r) rows[keep] = std::move(rows[r]);
          ++keep;
        }
      rows.resize(keep);
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

std::vector<ModRow> modular_rows(const Matrix& m, std::uint32_t p) {
  std::vector<ModRow> rows(m.rows(), ModRow(m.cols(), 0));
  if (m.field().is_rational()) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const IntRow ints = integer_row(m, r);
      for (std::size_t c = 0; c < m.cols(); ++c) {
        mpz_class z = ints[c] % p;
        if (z < 0) z += p;
        rows[r][c] = static_cast<std::uint32_t>(z.get_ui());
      }
    }
  } else {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c).residue();
  }
  return rows;
}

std::vector<std::size_t> modular_eliminate(std::vector<ModRow>& rows, std::size_t cols,
                                           std::uint32_t p, bool full) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t found = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (rows[r][c] != 0) {
        found = r;
        break;
      }
    if (found == rows.size()) continue;
    std::swap(rows[rank], rows[found]);
    const std::uint64_t inv = pow_mod(rows[rank][c], p - 2, p);
    for (auto& v : rows[rank]) v = static_cast<std::uint32_t>(v * inv % p);
    const std::size_t first = full ? 0 : rank + 1;
    for (std::size_t r = first; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::uint64_t factor = rows[r][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (rows[rank][j] == 0) continue;
        rows[r][j] = static_cast<std::uint32_t>(
            (rows[r][j] + (p - factor) * rows[rank][j]) % p);
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c].field() != field) throw FieldMismatch("matrix entry from another field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
  if (r0 > r1 || r1 > rows_ || c0 > c1 || c1 > cols_)
    throw DimensionMismatch("block out of range");
  Matrix b(field_, r1 - r0, c1 - c0);
  for (std::size_t r = r0; r < r1; ++r)
    for (std::size_t c = c0; c < c1; ++c) b(r - r0, c - c0) = (*this)(r, c);
  return b;
}

Vector Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  Vector out(rows_, Scalar::zero(field_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
  return out;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw DimensionMismatch("matrix product size mismatch");
  if (lhs.field_ != rhs.field_) throw FieldMismatch("matrix product across fields");
  Matrix out(lhs.field_, lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const Scalar& a = lhs(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        if (!rhs(k, j).is_zero()) out(i, j) += a * rhs(k, j);
    }
  return out;
}

bool operator==(const Matrix& lhs, const Matrix& rhs) {
  return lhs.field_ == rhs.field_ && lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ &&
         lhs.data_ == rhs.data_;
}

RowEchelon rref(const Matrix& m) {
  const Field field = m.field();
  RowEchelon out{Matrix(field, m.rows(), m.cols()), {}, 0};
  if (field.is_rational()) {
    std::vector<IntRow> rows = integer_rows(m);
    out.pivots = integer_eliminate(rows, m.cols(), true);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const mpz_class& lead = rows[r][out.pivots[r]];
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (sgn(rows[r][c]) != 0) out.reduced(r, c) = Scalar(field, mpq_class(rows[r][c], lead));
    }
  } else {
    const std::uint32_t p = field.characteristic();
    std::vector<ModRow> rows = modular_rows(m, p);
    out.pivots = modular_eliminate(rows, m.cols(), p, true);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        out.reduced(r, c) = Scalar(field, static_cast<long>(rows[r][c]));
  }
  out.rank = out.pivots.size();
  return out;
}

std::size_t rank_mod(const Matrix& m, std::uint32_t p) {
  std::vector<ModRow> rows = modular_rows(m, p);
  return modular_eliminate(rows, m.cols(), p, false).size();
}

std::size_t rank(const Matrix& m) {
  if (!m.field().is_rational()) return rank_mod(m, m.field().characteristic());
  const std::size_t bound = std::min(m.rows(), m.cols());
  if (bound == 0) return 0;
  if (rank_mod(m, kCertificatePrime) == bound) return bound;
  std::vector<IntRow> rows = integer_rows(m);
  return integer_eliminate(rows, m.cols(), false).size();
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix augmented(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
    augmented(r, n + r) = Scalar::one(m.field());
  }
  const RowEchelon e = rref(augmented);
  if (e.rank < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, 2 * n);
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Scalar det = Scalar::one(m.field());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return Scalar::zero(m.field());
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    const Scalar inv = a(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      const Scalar factor = a(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(r, j) -= factor * a(c, j);
    }
  }
  return det;
}

Subspace Subspace::zero(Field field, std::size_t ambient) {
  Subspace s;
  s.basis_ = Matrix(field, 0, ambient);
  return s;
}

Subspace Subspace::full(Field field, std::size_t ambient) {
  Subspace s;
  s.basis_ = Matrix::identity(field, ambient);
  s.pivots_.resize(ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots_[i] = i;
  return s;
}

Subspace Subspace::row_space(const Matrix& m) {
  const RowEchelon e = rref(m);
  Subspace s;
  s.basis_ = e.reduced.block(0, e.rank, 0, m.cols());
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::span(Field field, std::size_t ambient, const std::vector<Vector>& generators) {
  return row_space(Matrix::from_rows(field, generators, ambient));
}

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t r = 0; r < dim(); ++r) out.push_back(basis_.row(r));
  return out;
}

Subspace Subspace::annihilator() const {
  if (dim() == 0) return full(field(), ambient_dim());
  return kernel(basis_);
}

Subspace kernel(const Matrix& m) {
  const RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> generators;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), Scalar::zero(m.field()));
    v[free] = Scalar::one(m.field());
    for (std::size_t r = 0; r < e.rank; ++r) v[e.pivots[r]] = -e.reduced(r, free);
    generators.push_back(std::move(v));
  }
  if (generators.empty()) return Subspace::zero(m.field(), m.cols());
  return Subspace::span(m.field(), m.cols(), generators);
}

std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side size mismatch");
  Matrix augmented(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) augmented(r, c) = m(r, c);
    augmented(r, m.cols()) = b[r];
  }
  const RowEchelon e = rref(augmented);
  if (e.rank > 0 && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols(), Scalar::zero(m.field()));
  for (std::size_t r = 0; r < e.rank; ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

bool member(const Subspace& s, std::span<const Scalar> v) {
  if (v.size() != s.ambient_dim()) throw DimensionMismatch("vector outside the ambient space");
  // Reduce v against the canonical basis; membership iff the remainder is zero.
  Vector rest(v.begin(), v.end());
  for (std::size_t r = 0; r < s.dim(); ++r) {
    const std::size_t c = s.pivots()[r];
    if (rest[c].is_zero()) continue;
    const Scalar factor = rest[c];
    for (std::size_t j = c; j < rest.size(); ++j)
      if (!s.basis()(r, j).is_zero()) rest[j] -= factor * s.basis()(r, j);
  }
  return std::all_of(rest.begin(), rest.end(), [](const Scalar& x) { return x.is_zero(); });
}

bool subspace_equal(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw DimensionMismatch("subspaces of different spaces");
  return s == t;
}

}  // namespace torelli
