#include "torelli/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

#include "torelli/errors.hpp"

namespace torelli {

// --- monomials -------------------------------------------------------------

Monomial::Monomial(std::vector<std::uint16_t> exponents) : exponents_(std::move(exponents)) {
  for (auto e : exponents_) degree_ += e;
}

Monomial Monomial::one(std::size_t num_vars) {
  return Monomial(std::vector<std::uint16_t>(num_vars, 0));
}

Monomial Monomial::variable(std::size_t num_vars, std::size_t index, unsigned power) {
  std::vector<std::uint16_t> e(num_vars, 0);
  e.at(index) = static_cast<std::uint16_t>(power);
  return Monomial(std::move(e));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.num_vars() != b.num_vars()) throw DimensionMismatch("monomials in different rings");
  std::vector<std::uint16_t> e(a.exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(e[i] + b[i]);
  return Monomial(std::move(e));
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const noexcept {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  const auto ea = a.exponents();
  const auto eb = b.exponents();
  if (ea.size() != eb.size()) return ea.size() < eb.size();
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (ea[i] != eb[i]) return ea[i] > eb[i];
  return false;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto e : m.exponents()) h = (h ^ e) * 1099511628211ull;
  return h;
}

std::size_t graded_dim(std::size_t num_vars, unsigned degree) {
  if (num_vars == 0) return degree == 0 ? 1 : 0;
  // C(degree + num_vars - 1, num_vars - 1)
  std::size_t result = 1;
  for (std::size_t i = 1; i < num_vars; ++i) result = result * (degree + i) / i;
  return result;
}

namespace {

void enumerate_monomials(std::vector<std::uint16_t>& prefix, std::size_t position,
                         unsigned remaining, std::vector<Monomial>& out) {
  if (position + 1 == prefix.size()) {
    prefix[position] = static_cast<std::uint16_t>(remaining);
    out.emplace_back(prefix);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    prefix[position] = static_cast<std::uint16_t>(e);
    enumerate_monomials(prefix, position + 1, remaining - e, out);
  }
}

}  // namespace

GradedPiece::GradedPiece(std::size_t num_vars, unsigned degree)
    : num_vars_(num_vars), degree_(degree) {
  if (num_vars == 0) {
    if (degree == 0) basis_.emplace_back();
  } else {
    std::vector<std::uint16_t> prefix(num_vars, 0);
    basis_.reserve(graded_dim(num_vars, degree));
    enumerate_monomials(prefix, 0, degree, basis_);
  }
  index_.reserve(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::size_t GradedPiece::index_of(const Monomial& m) const {
  const auto it = index_.find(m);
  if (it == index_.end()) throw DimensionMismatch("monomial outside the graded piece");
  return it->second;
}

// --- polynomials -----------------------------------------------------------

HomPoly::HomPoly(Field field, std::size_t num_vars, unsigned degree)
    : field_(field), num_vars_(num_vars), degree_(degree) {}

HomPoly HomPoly::monomial(const Monomial& m, const Scalar& coefficient) {
  HomPoly f(coefficient.field(), m.num_vars(), m.degree());
  f.add_term(m, coefficient);
  return f;
}

HomPoly HomPoly::variable(Field field, std::size_t num_vars, std::size_t index) {
  return monomial(Monomial::variable(num_vars, index), Scalar::one(field));
}

Scalar HomPoly::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void HomPoly::add_term(const Monomial& m, const Scalar& c) {
  if (m.num_vars() != num_vars_ || m.degree() != degree_)
    throw DimensionMismatch("term does not match the polynomial's degree or ring");
  if (c.field() != field_) throw FieldMismatch("coefficient from another field");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::set<std::size_t> HomPoly::support() const {
  std::set<std::size_t> vars;
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < num_vars_; ++i)
      if (m[i] > 0) vars.insert(i);
  return vars;
}

Scalar HomPoly::evaluate(std::span<const Scalar> point) const {
  if (point.size() != num_vars_) throw DimensionMismatch("evaluation point has wrong length");
  Scalar total = Scalar::zero(field_);
  for (const auto& [m, c] : terms_) {
    Scalar value = c;
    for (std::size_t i = 0; i < num_vars_; ++i)
      for (unsigned e = 0; e < m[i]; ++e) value *= point[i];
    total += value;
  }
  return total;
}

void HomPoly::check_compatible(const HomPoly& rhs) const {
  if (field_ != rhs.field_) throw FieldMismatch("polynomials over different fields");
  if (num_vars_ != rhs.num_vars_ || degree_ != rhs.degree_)
    throw DimensionMismatch("polynomials of different degree or variable count");
}

HomPoly HomPoly::operator-() const {
  HomPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

HomPoly& HomPoly::operator+=(const HomPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

HomPoly& HomPoly::operator*=(const Scalar& c) {
  if (c.field() != field_) throw FieldMismatch("scalar from another field");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

HomPoly operator*(const HomPoly& lhs, const HomPoly& rhs) {
  if (lhs.field_ != rhs.field_) throw FieldMismatch("polynomials over different fields");
  if (lhs.num_vars_ != rhs.num_vars_) throw DimensionMismatch("polynomials in different rings");
  HomPoly out(lhs.field_, lhs.num_vars_, lhs.degree_ + rhs.degree_);
  for (const auto& [ma, ca] : lhs.terms_)
    for (const auto& [mb, cb] : rhs.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

bool operator==(const HomPoly& lhs, const HomPoly& rhs) {
  return lhs.field_ == rhs.field_ && lhs.num_vars_ == rhs.num_vars_ &&
         lhs.degree_ == rhs.degree_ && lhs.terms_ == rhs.terms_;
}

HomPoly power(const HomPoly& f, unsigned exponent) {
  HomPoly result = HomPoly::monomial(Monomial::one(f.num_vars()), Scalar::one(f.field()));
  for (unsigned i = 0; i < exponent; ++i) result = result * f;
  return result;
}

// --- coordinate changes ----------------------------------------------------

CoordinateChange::CoordinateChange(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    throw PreconditionViolation("coordinate change must be square");
  auto inv = torelli::inverse(matrix_);
  if (!inv) throw PreconditionViolation("coordinate change is singular");
  inverse_ = std::move(*inv);
}

CoordinateChange CoordinateChange::identity(Field field, std::size_t n) {
  return CoordinateChange(Matrix::identity(field, n));
}

CoordinateChange CoordinateChange::inverted() const { return CoordinateChange(inverse_); }

CoordinateChange compose(const CoordinateChange& first, const CoordinateChange& second) {
  return CoordinateChange(first.matrix() * second.matrix());
}

// --- calculus --------------------------------------------------------------

HomPoly partial_derivative(const HomPoly& f, std::size_t i) {
  if (i >= f.num_vars()) throw std::out_of_range("partial derivative index out of range");
  HomPoly out(f.field(), f.num_vars(), f.degree() == 0 ? 0 : f.degree() - 1);
  for (const auto& [m, c] : f.terms()) {
    if (m[i] == 0) continue;
    std::vector<std::uint16_t> e(m.exponents().begin(), m.exponents().end());
    --e[i];
    out.add_term(Monomial(std::move(e)), c * Scalar(f.field(), static_cast<long>(m[i])));
  }
  return out;
}

std::vector<HomPoly> gradient(const HomPoly& f) {
  std::vector<HomPoly> out;
  out.reserve(f.num_vars());
  for (std::size_t i = 0; i < f.num_vars(); ++i) out.push_back(partial_derivative(f, i));
  return out;
}

std::vector<std::vector<HomPoly>> hessian(const HomPoly& f) {
  const auto first = gradient(f);
  std::vector<std::vector<HomPoly>> h;
  h.reserve(f.num_vars());
  for (std::size_t i = 0; i < f.num_vars(); ++i) {
    std::vector<HomPoly> row;
    row.reserve(f.num_vars());
    for (std::size_t j = 0; j < f.num_vars(); ++j) row.push_back(partial_derivative(first[i], j));
    h.push_back(std::move(row));
  }
  return h;
}

HomPoly substitute_linear(const HomPoly& f, const CoordinateChange& change) {
  if (change.size() != f.num_vars())
    throw DimensionMismatch("coordinate change acts on a different number of variables");
  if (change.field() != f.field()) throw FieldMismatch("coordinate change over another field");
  const std::size_t n = f.num_vars();
  // powers[j][e] = (sum_i A(j,i) X_i)^e
  std::vector<std::vector<HomPoly>> powers(n);
  unsigned max_exp = 0;
  for (const auto& [m, c] : f.terms())
    for (std::size_t j = 0; j < n; ++j) max_exp = std::max(max_exp, m[j]);
  for (std::size_t j = 0; j < n; ++j) {
    HomPoly linear(f.field(), n, 1);
    for (std::size_t i = 0; i < n; ++i)
      linear.add_term(Monomial::variable(n, i), change.matrix()(j, i));
    powers[j].push_back(HomPoly::monomial(Monomial::one(n), Scalar::one(f.field())));
    for (unsigned e = 1; e <= max_exp; ++e) powers[j].push_back(powers[j].back() * linear);
  }
  HomPoly out(f.field(), n, f.degree());
  for (const auto& [m, c] : f.terms()) {
    HomPoly term = HomPoly::monomial(Monomial::one(n), c);
    for (std::size_t j = 0; j < n; ++j)
      if (m[j] > 0) term = term * powers[j][m[j]];
    out += term;
  }
  return out;
}

HomPoly euler_apply(const HomPoly& f) {
  const std::uint32_t p = f.field().characteristic();
  if (p != 0 && f.degree() % p == 0)
    throw UnsupportedInput("Euler identity degenerates: characteristic divides the degree");
  HomPoly out(f.field(), f.num_vars(), f.degree());
  for (std::size_t i = 0; i < f.num_vars(); ++i)
    out += HomPoly::variable(f.field(), f.num_vars(), i) * partial_derivative(f, i);
  return out;
}

// --- coefficient vectors ---------------------------------------------------

Vector coeff_vector(const HomPoly& f, const GradedPiece& piece) {
  if (f.degree() != piece.degree() || f.num_vars() != piece.num_vars())
    throw DimensionMismatch("polynomial does not live in this graded piece");
  Vector v(piece.dim(), Scalar::zero(f.field()));
  for (const auto& [m, c] : f.terms()) v[piece.index_of(m)] = c;
  return v;
}

Vector coeff_vector(const HomPoly& f, unsigned d) {
  if (f.degree() != d) throw DimensionMismatch("polynomial degree differs from requested piece");
  return coeff_vector(f, GradedPiece(f.num_vars(), d));
}

HomPoly from_coeff_vector(Field field, const GradedPiece& piece, std::span<const Scalar> coeffs) {
  if (coeffs.size() != piece.dim()) throw DimensionMismatch("coefficient vector has wrong length");
  HomPoly f(field, piece.num_vars(), piece.degree());
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.add_term(piece.basis()[i], coeffs[i]);
  return f;
}

HomPoly reduce_mod(const HomPoly& f, Field prime_field) {
  if (!f.field().is_rational()) throw FieldMismatch("reduce_mod expects a rational polynomial");
  HomPoly out(prime_field, f.num_vars(), f.degree());
  for (const auto& [m, c] : f.terms()) out.add_term(m, Scalar(prime_field, c.rational()));
  return out;
}

bool proportional(const HomPoly& f, const HomPoly& g) {
  if (f.is_zero() || g.is_zero()) return true;
  if (f.num_terms() != g.num_terms()) return false;
  const Scalar ratio = f.terms().begin()->second / g.terms().begin()->second;
  return f == g * ratio;
}

// --- parsing ---------------------------------------------------------------

namespace {

using Resolver = std::function<std::optional<std::size_t>(const std::string&)>;

struct RawTerm {
  mpq_class coefficient;
  std::vector<std::pair<std::size_t, unsigned>> powers;
  unsigned degree = 0;
  std::size_t position = 0;
};

class Parser {
 public:
  Parser(std::string_view text, Resolver resolve) : text_(text), resolve_(std::move(resolve)) {}

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> terms;
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty polynomial", pos_);
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = take() == '-' ? -1 : 1;
      skip_space();
    }
    terms.push_back(term(sign));
    while (true) {
      skip_space();
      if (pos_ == text_.size()) break;
      const char op = peek();
      if (op != '+' && op != '-')
        throw ParseError(std::string("expected '+' or '-' but found '") + op + "'", pos_);
      ++pos_;
      skip_space();
      terms.push_back(term(op == '-' ? -1 : 1));
    }
    return terms;
  }

 private:
  char peek() const { return text_[pos_]; }
  char take() { return text_[pos_++]; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  RawTerm term(int sign) {
    RawTerm t;
    t.position = pos_;
    t.coefficient = sign;
    factor(t);
    while (true) {
      skip_space();
      if (pos_ < text_.size() && peek() == '*') {
        ++pos_;
        skip_space();
        factor(t);
      } else {
        break;
      }
    }
    return t;
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected an integer", start);
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  void factor(RawTerm& t) {
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      mpz_class num = integer();
      mpz_class den = 1;
      skip_space();
      if (pos_ < text_.size() && peek() == '/') {
        ++pos_;
        skip_space();
        den = integer();
        if (den == 0) throw ParseError("zero denominator", start);
      }
      t.coefficient *= mpq_class(num, den);
      t.coefficient.canonicalize();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const auto index = resolve_(name);
      if (!index) throw ParseError("unknown variable '" + name + "'", start);
      unsigned exponent = 1;
      skip_space();
      if (pos_ < text_.size() && peek() == '^') {
        ++pos_;
        skip_space();
        const std::size_t epos = pos_;
        const mpz_class e = integer();
        if (e > 1000) throw ParseError("exponent too large", epos);
        exponent = static_cast<unsigned>(e.get_ui());
      }
      t.powers.emplace_back(*index, exponent);
      t.degree += exponent;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  Resolver resolve_;
  std::size_t pos_ = 0;
};

HomPoly assemble(const std::vector<RawTerm>& terms, std::size_t num_vars, Field field) {
  const unsigned degree = terms.front().degree;
  for (const auto& t : terms)
    if (t.degree != degree)
      throw ParseError("inhomogeneous polynomial: term of degree " + std::to_string(t.degree) +
                           " in a polynomial of degree " + std::to_string(degree),
                       t.position);
  HomPoly f(field, num_vars, degree);
  for (const auto& t : terms) {
    std::vector<std::uint16_t> e(num_vars, 0);
    for (const auto& [i, k] : t.powers) e[i] = static_cast<std::uint16_t>(e[i] + k);
    Scalar c;
    try {
      c = Scalar(field, t.coefficient);
    } catch (const DivisionByZero&) {
      throw ParseError("coefficient " + t.coefficient.get_str() + " is not in " + field.name(),
                       t.position);
    }
    f.add_term(Monomial(std::move(e)), c);
  }
  return f;
}

std::optional<std::size_t> default_alias(const std::string& name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  if (name == "w") return 3;
  if (name.size() == 2 && name[0] == 'x' && std::isdigit(static_cast<unsigned char>(name[1])))
    return static_cast<std::size_t>(name[1] - '0');
  return std::nullopt;
}

}  // namespace

std::vector<std::string> default_var_names(std::size_t num_vars) {
  static const char* kShort[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_vars; ++i)
    names.push_back(num_vars <= 4 ? std::string(kShort[i]) : "x" + std::to_string(i));
  return names;
}

HomPoly parse_poly(std::string_view text, const std::vector<std::string>& var_names, Field field) {
  if (var_names.empty()) throw std::invalid_argument("no variables declared");
  for (std::size_t i = 0; i < var_names.size(); ++i)
    for (std::size_t j = i + 1; j < var_names.size(); ++j)
      if (var_names[i] == var_names[j])
        throw std::invalid_argument("duplicate variable name '" + var_names[i] + "'");
  Parser parser(text, [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(var_names.begin(), var_names.end(), name);
    if (it == var_names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - var_names.begin());
  });
  return assemble(parser.parse(), var_names.size(), field);
}

ParsedPoly parse_poly_default(std::string_view text, Field field, std::size_t min_vars) {
  std::size_t num_vars = std::max<std::size_t>(min_vars, 1);
  Parser parser(text, [&](const std::string& name) {
    const auto index = default_alias(name);
    if (index) num_vars = std::max(num_vars, *index + 1);
    return index;
  });
  const auto terms = parser.parse();
  return {assemble(terms, num_vars, field), default_var_names(num_vars)};
}

std::string format_poly(const HomPoly& f, const std::vector<std::string>& var_names) {
  if (var_names.size() != f.num_vars()) throw DimensionMismatch("wrong number of variable names");
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    bool negative = false;
    std::string magnitude;
    if (f.field().is_rational()) {
      negative = sgn(c.rational()) < 0;
      magnitude = mpq_class(abs(c.rational())).get_str();
    } else {
      magnitude = c.to_string();
    }
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    const bool constant = m.degree() == 0;
    bool need_star = false;
    if (magnitude != "1" || constant) {
      out << magnitude;
      need_star = true;
    }
    for (std::size_t i = 0; i < f.num_vars(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) out << '*';
      out << var_names[i];
      if (m[i] > 1) out << '^' << m[i];
      need_star = true;
    }
  }
  return out.str();
}

std::string format_poly(const HomPoly& f) { return format_poly(f, default_var_names(f.num_vars())); }

}  // namespace torelli
