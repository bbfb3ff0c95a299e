#include "torelli/cubic.hpp"

#include <algorithm>
#include <array>

#include "torelli/errors.hpp"
#include "torelli/jacobi.hpp"
#include "torelli/linalg.hpp"

namespace torelli {

namespace {

constexpr std::size_t kCoefficients = 10;
constexpr unsigned kInvariantDegree = 4;

using Operator = std::vector<HomPoly>;  // image linear form for each coefficient

const GradedPiece& cubic_piece() {
  static const GradedPiece piece(3, 3);
  return piece;
}

// Linear action on coefficients induced by f -> f + eps * (sum of weight * x_i df/dx_j).
Operator vector_field_operator(const std::vector<std::array<long, 3>>& parts) {
  const Field q = Field::rationals();
  const GradedPiece& piece = cubic_piece();
  Operator op(kCoefficients, HomPoly(q, kCoefficients, 1));
  for (const auto& [i, j, weight] : parts)
    for (std::size_t m = 0; m < kCoefficients; ++m) {
      const Monomial& alpha = piece.basis()[m];
      if (alpha[static_cast<std::size_t>(j)] == 0) continue;
      std::vector<std::uint16_t> e(alpha.exponents().begin(), alpha.exponents().end());
      --e[static_cast<std::size_t>(j)];
      ++e[static_cast<std::size_t>(i)];
      const std::size_t target = piece.index_of(Monomial(std::move(e)));
      op[target].add_term(Monomial::variable(kCoefficients, m),
                          Scalar(q, weight * static_cast<long>(alpha[static_cast<std::size_t>(j)])));
    }
  return op;
}

const std::vector<Operator>& sl3_operators() {
  static const std::vector<Operator> ops = [] {
    std::vector<Operator> out;
    for (long i = 0; i < 3; ++i)
      for (long j = 0; j < 3; ++j)
        if (i != j) out.push_back(vector_field_operator({{i, j, 1}}));
    out.push_back(vector_field_operator({{0, 0, 1}, {1, 1, -1}}));
    out.push_back(vector_field_operator({{1, 1, 1}, {2, 2, -1}}));
    return out;
  }();
  return ops;
}

HomPoly apply_operator(const HomPoly& P, const Operator& op) {
  HomPoly out(P.field(), kCoefficients, P.degree());
  for (std::size_t m = 0; m < kCoefficients; ++m) {
    if (op[m].is_zero()) continue;
    const HomPoly d = partial_derivative(P, m);
    if (!d.is_zero()) out += d * op[m];
  }
  return out;
}

}  // namespace

bool annihilated_by_sl3(const HomPoly& P) {
  if (P.num_vars() != kCoefficients) throw DimensionMismatch("expected a polynomial in 10 coefficients");
  return std::all_of(sl3_operators().begin(), sl3_operators().end(),
                     [&](const Operator& op) { return apply_operator(P, op).is_zero(); });
}

InvariantDerivation derive_invariant(RowOrder order) {
  const Field q = Field::rationals();
  const GradedPiece& cubic = cubic_piece();
  const GradedPiece quartics(kCoefficients, kInvariantDegree);
  // The two diagonal operators act on a coefficient monomial by its total
  // weight, so their joint kernel is spanned by the monomials of weight
  // (4, 4, 4); only those columns can carry an invariant.
  std::vector<Monomial> columns;
  for (const auto& mono : quartics.basis()) {
    std::array<unsigned, 3> weight{0, 0, 0};
    for (std::size_t m = 0; m < kCoefficients; ++m)
      for (std::size_t v = 0; v < 3; ++v) weight[v] += mono[m] * cubic.basis()[m][v];
    if (weight[0] == kInvariantDegree && weight[1] == kInvariantDegree && weight[2] == kInvariantDegree)
      columns.push_back(mono);
  }
  std::vector<const Operator*> ops;
  for (const auto& op : sl3_operators()) ops.push_back(&op);
  if (order == RowOrder::Reversed) std::reverse(ops.begin(), ops.end());

  Matrix system(q, ops.size() * quartics.dim(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const HomPoly mono = HomPoly::monomial(columns[c], Scalar::one(q));
    for (std::size_t o = 0; o < ops.size(); ++o) {
      const HomPoly image = apply_operator(mono, *ops[o]);
      for (const auto& [m, coeff] : image.terms())
        system(o * quartics.dim() + quartics.index_of(m), c) = coeff;
    }
  }
  const Subspace solutions = kernel(system);
  InvariantDerivation out{HomPoly(q, kCoefficients, kInvariantDegree), solutions.dim(), columns.size()};
  if (solutions.dim() != 1)
    throw ConsistencyFailure("expected a one-dimensional space of degree-4 invariants, found " +
                             std::to_string(solutions.dim()));
  const Vector v = solutions.basis().row(0);
  for (std::size_t c = 0; c < columns.size(); ++c) out.invariant.add_term(columns[c], v[c]);
  out.invariant *= out.invariant.terms().begin()->second.inverse();
  if (!annihilated_by_sl3(out.invariant))
    throw ConsistencyFailure("derived invariant is not annihilated by sl_3");
  return out;
}

const HomPoly& cubic_invariant() {
  static const HomPoly invariant = derive_invariant().invariant;
  return invariant;
}

Scalar invariant_value(const HomPoly& cubic) {
  if (cubic.num_vars() != 3 || cubic.degree() != 3)
    throw UnsupportedInput("the cubic invariant needs a ternary cubic");
  if (!cubic.field().is_rational())
    throw UnsupportedInput("the cubic invariant is derived in characteristic 0 only");
  return cubic_invariant().evaluate(coeff_vector(cubic, cubic_piece()));
}

bool j_is_zero(const HomPoly& cubic) {
  const Scalar value = invariant_value(cubic);
  if (!is_smooth(cubic)) throw UnsupportedInput("singular cubic: the j-invariant is undefined");
  return value.is_zero();
}

CorollaryRecord corollary_check(const HomPoly& cubic) {
  CorollaryRecord r;
  r.j_zero = j_is_zero(cubic);
  const STVerdict st = is_st(cubic);
  r.st = st.kind;
  r.st_dim = st.st_dim;
  r.agree = (r.st == STKind::ST) == r.j_zero;
  return r;
}

}  // namespace torelli
