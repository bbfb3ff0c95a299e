#include "torelli/field.hpp"

#include <stdexcept>

#include "torelli/errors.hpp"

namespace torelli {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t reduce(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) noexcept {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("field characteristic must be a prime below 2^31, got " +
                                std::to_string(p));
  return Field(p);
}

Field Field::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.rfind("fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
        digits.size() > 10)
      throw std::invalid_argument("malformed field descriptor '" + text + "'");
    return prime(static_cast<std::uint32_t>(std::stoull(digits)));
  }
  throw std::invalid_argument("unknown field '" + text + "' (expected q or fp:<prime>)");
}

std::string Field::name() const { return p_ == 0 ? "q" : "fp:" + std::to_string(p_); }

Scalar::Scalar(Field field, long value) : p_(field.characteristic()) {
  if (p_ == 0) {
    q_ = value;
  } else {
    long r = value % static_cast<long>(p_);
    if (r < 0) r += p_;
    r_ = static_cast<std::uint32_t>(r);
  }
}

Scalar::Scalar(Field field, const mpq_class& value) : p_(field.characteristic()) {
  if (p_ == 0) {
    q_ = value;
    q_.canonicalize();
    return;
  }
  const std::uint32_t den = reduce(value.get_den(), p_);
  if (den == 0)
    throw DivisionByZero("denominator " + value.get_den().get_str() + " vanishes in F_" +
                         std::to_string(p_));
  const std::uint64_t num = reduce(value.get_num(), p_);
  r_ = static_cast<std::uint32_t>(num * pow_mod(den, p_ - 2, p_) % p_);
}

Field Scalar::field() const noexcept {
  return Field(p_);
}

bool Scalar::is_zero() const noexcept { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }

bool Scalar::is_one() const noexcept { return p_ == 0 ? q_ == 1 : r_ == 1; }

const mpq_class& Scalar::rational() const {
  if (p_ != 0) throw FieldMismatch("rational value requested from a prime-field scalar");
  return q_;
}

std::uint32_t Scalar::residue() const {
  if (p_ == 0) throw FieldMismatch("residue requested from a rational scalar");
  return r_;
}

void Scalar::check_same_field(const Scalar& rhs) const {
  if (p_ != rhs.p_) throw FieldMismatch("scalars from different fields");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  Scalar out = *this;
  if (p_ == 0)
    out.q_ = 1 / q_;
  else
    out.r_ = pow_mod(r_, p_ - 2, p_);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (p_ == 0)
    out.q_ = -q_;
  else
    out.r_ = r_ == 0 ? 0 : p_ - r_;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (p_ == 0)
    q_ += rhs.q_;
  else
    r_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r_) + rhs.r_) % p_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same_field(rhs);
  if (p_ == 0)
    q_ -= rhs.q_;
  else
    r_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r_) + p_ - rhs.r_) % p_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (p_ == 0)
    q_ *= rhs.q_;
  else
    r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r_) * rhs.r_ % p_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.p_ != rhs.p_) return false;
  return lhs.p_ == 0 ? lhs.q_ == rhs.q_ : lhs.r_ == rhs.r_;
}

bool operator<(const Scalar& lhs, const Scalar& rhs) {
  lhs.check_same_field(rhs);
  return lhs.p_ == 0 ? lhs.q_ < rhs.q_ : lhs.r_ < rhs.r_;
}

std::string Scalar::to_string() const { return p_ == 0 ? q_.get_str() : std::to_string(r_); }

}  // namespace torelli
