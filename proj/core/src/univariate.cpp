#include "torelli/univariate.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "torelli/errors.hpp"

namespace torelli {

UPoly::UPoly(Field field, std::vector<Scalar> coefficients)
    : field_(field), c_(std::move(coefficients)) {
  for (const auto& c : c_)
    if (c.field() != field_) throw FieldMismatch("univariate coefficient from another field");
  trim();
}

UPoly UPoly::constant(const Scalar& c) { return UPoly(c.field(), {c}); }

UPoly UPoly::linear_root(const Scalar& root) {
  return UPoly(root.field(), {-root, Scalar::one(root.field())});
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar UPoly::coefficient(std::size_t i) const {
  return i < c_.size() ? c_[i] : Scalar::zero(field_);
}

const Scalar& UPoly::leading() const {
  if (c_.empty()) throw DivisionByZero("leading coefficient of the zero polynomial");
  return c_.back();
}

Scalar UPoly::evaluate(const Scalar& t) const {
  Scalar acc = Scalar::zero(field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t i = 1; i < c_.size(); ++i)
    d.push_back(c_[i] * Scalar(field_, static_cast<long>(i)));
  return UPoly(field_, std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

UPoly UPoly::operator-() const { return *this * -Scalar::one(field_); }

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), Scalar::zero(a.field_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UPoly(a.field_, std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
  std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar::zero(a.field_));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(a.field_, std::move(c));
}

UPoly operator*(const UPoly& a, const Scalar& s) {
  std::vector<Scalar> c = a.c_;
  for (auto& x : c) x *= s;
  return UPoly(a.field_, std::move(c));
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Scalar& c = c_[k];
    if (c.is_zero()) continue;
    bool negative = field_.is_rational() && sgn(c.rational()) < 0;
    std::string mag = negative ? mpq_class(-c.rational()).get_str() : c.to_string();
    out << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    if (k == 0) {
      out << mag;
      continue;
    }
    if (mag != "1") out << mag << '*';
    out << var;
    if (k > 1) out << '^' << k;
  }
  return out.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  const Field field = a.field();
  UPoly rem = a;
  if (a.degree() < b.degree()) return {UPoly(field), rem};
  std::vector<Scalar> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Scalar::zero(field));
  const Scalar inv = b.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
    const Scalar factor = rem.leading() * inv;
    q[shift] = factor;
    std::vector<Scalar> sub(shift + b.coefficients().size(), Scalar::zero(field));
    for (std::size_t i = 0; i < b.coefficients().size(); ++i)
      sub[shift + i] = b.coefficients()[i] * factor;
    rem = rem - UPoly(field, std::move(sub));
  }
  return {UPoly(field, std::move(q)), rem};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly squarefree_part(const UPoly& f) {
  if (f.degree() <= 0) return f;
  const UPoly d = f.derivative();
  if (d.is_zero()) return f.monic();  // p-th power in characteristic p; not reached for p > degree
  return divmod(f, gcd(f, d)).first.monic();
}

namespace {

// --- rational roots --------------------------------------------------------

using QPoly = std::vector<mpq_class>;  // low to high

int sign_at(const QPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

QPoly q_rem(QPoly a, const QPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
  }
  return a;
}

std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> chain{f};
  QPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  while (!d.empty() && sgn(d.back()) == 0) d.pop_back();
  if (d.empty()) return chain;
  chain.push_back(d);
  while (chain.back().size() > 1) {
    QPoly r = q_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int variations(const std::vector<QPoly>& chain, const mpq_class& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Integer roots of a squarefree monic integer polynomial: bisect the Cauchy
// interval with Sturm counts until each piece is short enough to hold at most
// one integer, then test candidates exactly.
void integer_roots(const QPoly& h, const std::vector<QPoly>& chain, mpq_class lo, mpq_class hi,
                   std::vector<mpz_class>& out) {
  const int count = variations(chain, lo) - variations(chain, hi);  // roots in (lo, hi]
  if (count == 0) return;
  if (hi - lo <= mpq_class(1, 2)) {
    mpz_class candidate;
    mpz_fdiv_q(candidate.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (mpq_class(candidate) > lo && sign_at(h, mpq_class(candidate)) == 0) out.push_back(candidate);
    return;
  }
  const mpq_class mid = (lo + hi) / 2;
  integer_roots(h, chain, lo, mid, out);
  integer_roots(h, chain, mid, hi, out);
}

std::vector<Scalar> rational_roots(const UPoly& f) {
  const Field field = f.field();
  UPoly sf = squarefree_part(f);
  if (sf.degree() <= 0) return {};
  // Primitive integer form a_d t^d + ... + a_0.
  mpz_class lcm = 1;
  for (const auto& c : sf.coefficients())
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> a;
  for (const auto& c : sf.coefficients()) a.push_back(c.rational().get_num() * (lcm / c.rational().get_den()));
  const std::size_t d = a.size() - 1;
  const mpz_class lead = a[d];
  // h(s) = lead^(d-1) f(s / lead) is monic with integer coefficients; rational
  // roots of f are s / lead for integer roots s of h.
  QPoly h(d + 1);
  mpz_class scale = 1;
  for (std::size_t i = d + 1; i-- > 0;) {
    // coefficient of s^i is a_i * lead^(d-1-i) for i < d, 1 for i = d
    if (i == d) {
      h[i] = 1;
    } else {
      h[i] = a[i] * scale;
      scale *= lead;
    }
  }
  mpz_class bound = 0;
  for (std::size_t i = 0; i < d; ++i) bound = std::max(bound, mpz_class(abs(h[i].get_num())));
  bound += 1;
  const auto chain = sturm_chain(h);
  std::vector<mpz_class> ints;
  integer_roots(h, chain, mpq_class(-bound - 1), mpq_class(bound), ints);
  std::vector<Scalar> roots;
  for (const auto& s : ints) roots.emplace_back(field, mpq_class(s, lead));
  std::sort(roots.begin(), roots.end());
  return roots;
}

// --- prime-field roots -----------------------------------------------------

UPoly power_mod(UPoly base, mpz_class exp, const UPoly& modulus) {
  UPoly result = UPoly::constant(Scalar::one(base.field()));
  base = divmod(base, modulus).second;
  while (exp > 0) {
    if (mpz_odd_p(exp.get_mpz_t())) result = divmod(result * base, modulus).second;
    base = divmod(base * base, modulus).second;
    exp >>= 1;
  }
  return result;
}

void split_linear_factors(const UPoly& g, std::mt19937_64& rng, std::vector<Scalar>& out) {
  if (g.degree() <= 0) return;
  const Field field = g.field();
  if (g.degree() == 1) {
    out.push_back(-g.coefficient(0) / g.leading());
    return;
  }
  const std::uint32_t p = field.characteristic();
  std::uniform_int_distribution<std::uint32_t> pick(0, p - 1);
  for (int attempt = 0; attempt < 256; ++attempt) {
    const UPoly shifted(field, {Scalar(field, static_cast<long>(pick(rng))), Scalar::one(field)});
    const UPoly h = power_mod(shifted, mpz_class((p - 1) / 2), g) - UPoly::constant(Scalar::one(field));
    const UPoly d = gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear_factors(d, rng, out);
      split_linear_factors(divmod(g, d).first, rng, out);
      return;
    }
  }
  throw ConsistencyFailure("root splitting over F_p did not converge");
}

std::vector<Scalar> prime_field_roots(const UPoly& f) {
  const Field field = f.field();
  const std::uint32_t p = field.characteristic();
  std::vector<Scalar> roots;
  if (p < 64) {
    for (std::uint32_t v = 0; v < p; ++v) {
      const Scalar x(field, static_cast<long>(v));
      if (f.evaluate(x).is_zero()) roots.push_back(x);
    }
    return roots;
  }
  const UPoly t(field, {Scalar::zero(field), Scalar::one(field)});
  const UPoly frobenius = power_mod(t, mpz_class(p), f) - t;
  const UPoly linear_part = gcd(f, frobenius);
  std::mt19937_64 rng(0x5eed5eedULL);
  split_linear_factors(linear_part, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

RootSplit base_field_roots(const UPoly& f) {
  if (f.is_zero()) throw PreconditionViolation("roots of the zero polynomial");
  RootSplit split{{}, UPoly(f.field())};
  split.roots = f.field().is_rational() ? rational_roots(f) : prime_field_roots(f);
  UPoly rest = squarefree_part(f);
  for (const auto& r : split.roots) rest = divmod(rest, UPoly::linear_root(r)).first;
  split.remainder = rest.monic();
  return split;
}

}  // namespace torelli
