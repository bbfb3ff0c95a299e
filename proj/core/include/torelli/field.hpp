#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace torelli {

/// Coefficient field: the rationals, or a prime field F_p with p < 2^31.
class Field {
 public:
  static Field rationals() noexcept { return Field(0); }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);
  /// Parses "q" or "fp:<p>".
  static Field parse(const std::string& text);

  bool is_rational() const noexcept { return p_ == 0; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const noexcept { return p_; }
  /// "q" or "fp:<p>", the same spelling `parse` accepts.
  std::string name() const;

  friend bool operator==(Field, Field) = default;

 private:
  friend class Scalar;
  explicit Field(std::uint32_t p) noexcept : p_(p) {}
  std::uint32_t p_;
};

/// An element of a Field. Rationals are kept in lowest terms (GMP canonical
/// form); prime-field values are residues in [0, p).
class Scalar {
 public:
  Scalar() = default;  // rational zero
  Scalar(Field field, long value);
  /// Throws DivisionByZero if the denominator vanishes in `field`.
  Scalar(Field field, const mpq_class& value);

  static Scalar zero(Field field) { return Scalar(field, 0L); }
  static Scalar one(Field field) { return Scalar(field, 1L); }

  Field field() const noexcept;
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Rational value; throws FieldMismatch over F_p.
  const mpq_class& rational() const;
  /// Residue in [0, p); throws FieldMismatch over the rationals.
  std::uint32_t residue() const;

  Scalar inverse() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);

  /// Total order used only for deterministic sorting: numeric order over the
  /// rationals, residue order over F_p.
  friend bool operator<(const Scalar& lhs, const Scalar& rhs);

  /// "3", "-2/5", or the residue.
  std::string to_string() const;

 private:
  void check_same_field(const Scalar& rhs) const;

  std::uint32_t p_ = 0;
  mpq_class q_;
  std::uint32_t r_ = 0;
};

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) noexcept;

}  // namespace torelli
