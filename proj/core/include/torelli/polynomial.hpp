#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "torelli/field.hpp"
#include "torelli/linalg.hpp"

namespace torelli {

/// Exponent vector of a monomial in n+1 variables, with its cached degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint16_t> exponents);

  static Monomial one(std::size_t num_vars);
  static Monomial variable(std::size_t num_vars, std::size_t index, unsigned power = 1);

  std::size_t num_vars() const noexcept { return exponents_.size(); }
  unsigned degree() const noexcept { return degree_; }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  std::span<const std::uint16_t> exponents() const noexcept { return exponents_; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

 private:
  std::vector<std::uint16_t> exponents_;
  unsigned degree_ = 0;
};

/// Graded lexicographic order with x0 > x1 > ... > xn; the comparator sorts
/// larger monomials first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Dimension of A_d, the degree-d forms in `num_vars` variables.
std::size_t graded_dim(std::size_t num_vars, unsigned degree);

/// The monomial basis of A_d listed in descending grlex order, with an index.
class GradedPiece {
 public:
  GradedPiece(std::size_t num_vars, unsigned degree);

  std::size_t num_vars() const noexcept { return num_vars_; }
  unsigned degree() const noexcept { return degree_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  std::size_t index_of(const Monomial& m) const;

 private:
  std::size_t num_vars_;
  unsigned degree_;
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

/// Sparse homogeneous polynomial. Every stored term has the declared degree
/// and a nonzero coefficient; the zero polynomial keeps its degree.
class HomPoly {
 public:
  using TermMap = std::map<Monomial, Scalar, GrlexGreater>;

  HomPoly(Field field, std::size_t num_vars, unsigned degree);
  static HomPoly monomial(const Monomial& m, const Scalar& coefficient);
  static HomPoly variable(Field field, std::size_t num_vars, std::size_t index);

  Field field() const noexcept { return field_; }
  std::size_t num_vars() const noexcept { return num_vars_; }
  unsigned degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  const TermMap& terms() const noexcept { return terms_; }

  Scalar coefficient(const Monomial& m) const;
  /// Adds c·m; m must have this polynomial's degree and variable count.
  void add_term(const Monomial& m, const Scalar& c);
  /// Indices of variables that occur in some term.
  std::set<std::size_t> support() const;
  Scalar evaluate(std::span<const Scalar> point) const;

  HomPoly operator-() const;
  HomPoly& operator+=(const HomPoly& rhs);
  HomPoly& operator-=(const HomPoly& rhs);
  HomPoly& operator*=(const Scalar& c);
  friend HomPoly operator+(HomPoly lhs, const HomPoly& rhs) { return lhs += rhs; }
  friend HomPoly operator-(HomPoly lhs, const HomPoly& rhs) { return lhs -= rhs; }
  friend HomPoly operator*(HomPoly lhs, const Scalar& c) { return lhs *= c; }
  friend HomPoly operator*(const Scalar& c, HomPoly rhs) { return rhs *= c; }
  friend HomPoly operator*(const HomPoly& lhs, const HomPoly& rhs);
  friend bool operator==(const HomPoly& lhs, const HomPoly& rhs);

 private:
  void check_compatible(const HomPoly& rhs) const;

  Field field_;
  std::size_t num_vars_;
  unsigned degree_;
  TermMap terms_;
};

HomPoly power(const HomPoly& f, unsigned exponent);

/// Invertible (n+1)x(n+1) substitution matrix. Applying it to f replaces the
/// old variable x_j by the linear form sum_i matrix(j, i) X_i.
class CoordinateChange {
 public:
  /// Throws PreconditionViolation for non-square or singular input.
  explicit CoordinateChange(Matrix matrix);
  static CoordinateChange identity(Field field, std::size_t n);

  Field field() const noexcept { return matrix_.field(); }
  std::size_t size() const noexcept { return matrix_.rows(); }
  const Matrix& matrix() const noexcept { return matrix_; }
  const Matrix& inverse() const noexcept { return inverse_; }
  CoordinateChange inverted() const;

  friend bool operator==(const CoordinateChange& a, const CoordinateChange& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  Matrix matrix_;
  Matrix inverse_;
};

/// The change that applies `first` and then `second`:
/// substitute_linear(f, compose(A, B)) == substitute_linear(substitute_linear(f, A), B).
CoordinateChange compose(const CoordinateChange& first, const CoordinateChange& second);

HomPoly partial_derivative(const HomPoly& f, std::size_t i);
/// All n+1 first partials.
std::vector<HomPoly> gradient(const HomPoly& f);
std::vector<std::vector<HomPoly>> hessian(const HomPoly& f);
HomPoly substitute_linear(const HomPoly& f, const CoordinateChange& change);
/// sum_i x_i df/dx_i. Throws UnsupportedInput when the characteristic divides
/// the degree.
HomPoly euler_apply(const HomPoly& f);

/// Coefficients along the descending monomial basis of A_d.
Vector coeff_vector(const HomPoly& f, unsigned d);
Vector coeff_vector(const HomPoly& f, const GradedPiece& piece);
HomPoly from_coeff_vector(Field field, const GradedPiece& piece, std::span<const Scalar> coeffs);

/// Maps a rational polynomial to F_p. Throws DivisionByZero if p divides a
/// denominator.
HomPoly reduce_mod(const HomPoly& f, Field prime_field);

/// True if f and g are scalar multiples of each other (zero counts as a
/// multiple of everything).
bool proportional(const HomPoly& f, const HomPoly& g);

// --- text ---------------------------------------------------------------

/// x, y, z, w for up to four variables, x0..xn beyond that.
std::vector<std::string> default_var_names(std::size_t num_vars);

/// Parses text over the declared variables.
HomPoly parse_poly(std::string_view text, const std::vector<std::string>& var_names, Field field);

struct ParsedPoly {
  HomPoly poly;
  std::vector<std::string> var_names;
};

/// Parses with the default aliases (x,y,z,w and x0..x9); the variable count
/// is one more than the highest index used, and at least `min_vars`.
ParsedPoly parse_poly_default(std::string_view text, Field field, std::size_t min_vars = 0);

/// Canonical text: terms in descending grlex order, "c*x^e" factors.
std::string format_poly(const HomPoly& f, const std::vector<std::string>& var_names);
std::string format_poly(const HomPoly& f);

}  // namespace torelli
