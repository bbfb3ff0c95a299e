#pragma once

#include <string>
#include <utility>
#include <vector>

#include "torelli/field.hpp"

namespace torelli {

/// Dense univariate polynomial, coefficients from the constant term upward,
/// with no trailing zeros (the zero polynomial is empty).
class UPoly {
 public:
  explicit UPoly(Field field) : field_(field) {}
  UPoly(Field field, std::vector<Scalar> coefficients);
  static UPoly constant(const Scalar& c);
  /// t - root
  static UPoly linear_root(const Scalar& root);

  Field field() const noexcept { return field_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Scalar>& coefficients() const noexcept { return c_; }
  Scalar coefficient(std::size_t i) const;
  const Scalar& leading() const;

  Scalar evaluate(const Scalar& t) const;
  UPoly derivative() const;
  UPoly monic() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const Scalar& c);
  friend bool operator==(const UPoly& a, const UPoly& b) = default;

  /// "t^2 - 3/4" style rendering in the variable `var`.
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();

  Field field_;
  std::vector<Scalar> c_;
};

/// Quotient and remainder; throws DivisionByZero for a zero divisor.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
/// Product of the distinct monic irreducible factors (up to a unit).
UPoly squarefree_part(const UPoly& f);

struct RootSplit {
  std::vector<Scalar> roots;  // distinct roots in the base field, ascending
  UPoly remainder;            // monic squarefree cofactor with no base-field root
};

/// Roots of a nonzero polynomial in its own coefficient field. Over Q: Sturm
/// isolation of the integer roots of the monic transform; over F_p: gcd with
/// t^p - t followed by Cantor-Zassenhaus splitting.
RootSplit base_field_roots(const UPoly& f);

}  // namespace torelli
