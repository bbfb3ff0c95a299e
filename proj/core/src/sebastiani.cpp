#include "torelli/sebastiani.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>

namespace torelli {

namespace {

void require_same_ring(const HomPoly& f, const HomPoly& g) {
  if (f.field() != g.field()) throw FieldMismatch("polynomials over different fields");
  if (f.num_vars() != g.num_vars() || f.degree() != g.degree())
    throw DimensionMismatch("polynomials of different degree or variable count");
}

// Columns are the coefficient vectors of the partials of f in A_{k-1}.
Matrix partials_columns(const HomPoly& f, const GradedPiece& piece) {
  Matrix m(f.field(), piece.dim(), f.num_vars());
  for (std::size_t i = 0; i < f.num_vars(); ++i) {
    const Vector v = coeff_vector(partial_derivative(f, i), piece);
    for (std::size_t r = 0; r < piece.dim(); ++r) m(r, i) = v[r];
  }
  return m;
}

}  // namespace

// --- S(f) ------------------------------------------------------------------

std::vector<HomPoly> STSpace::basis() const {
  const GradedPiece piece(f.num_vars(), f.degree());
  std::vector<HomPoly> out;
  for (const auto& v : space.basis_vectors()) out.push_back(from_coeff_vector(f.field(), piece, v));
  return out;
}

Subspace jacobi_closure(const Subspace& jacobi, std::size_t num_vars, unsigned k) {
  if (k == 0) throw PreconditionViolation("degree must be positive");
  const GradedPiece lower(num_vars, k - 1);
  const GradedPiece upper(num_vars, k);
  if (jacobi.ambient_dim() != lower.dim())
    throw DimensionMismatch("subspace does not live in A_{k-1}");
  const Field field = jacobi.field();
  const Subspace conditions = jacobi.annihilator();
  if (conditions.dim() == 0) return Subspace::full(field, upper.dim());
  // Row (j, w): <w, coeff(dg/dx_j)> = 0, linear in the coefficients of g.
  const auto ws = conditions.basis_vectors();
  Matrix m(field, num_vars * ws.size(), upper.dim());
  for (std::size_t j = 0; j < num_vars; ++j)
    for (std::size_t col = 0; col < upper.dim(); ++col) {
      const Monomial& mono = upper.basis()[col];
      if (mono[j] == 0) continue;
      std::vector<std::uint16_t> e(mono.exponents().begin(), mono.exponents().end());
      --e[j];
      const std::size_t target = lower.index_of(Monomial(std::move(e)));
      const Scalar factor(field, static_cast<long>(mono[j]));
      for (std::size_t w = 0; w < ws.size(); ++w)
        if (!ws[w][target].is_zero()) m(j * ws.size() + w, col) = ws[w][target] * factor;
    }
  return kernel(m);
}

STSpace st_space(const HomPoly& f) {
  if (f.degree() == 0) throw PreconditionViolation("S(f) needs positive degree");
  return {f, jacobi_closure(jacobi_piece(f).piece, f.num_vars(), f.degree())};
}

STVerdict is_st(const HomPoly& f) {
  if (f.degree() == 0) throw PreconditionViolation("constant polynomial");
  if (!is_smooth(f)) throw UnsupportedInput("singular divisor: Theorem applies to smooth divisors only");
  STVerdict v;
  v.st_dim = st_space(f).dim();
  if (f.num_vars() < 2) {
    v.kind = STKind::NotST;
    v.justification = "a single variable admits no split";
  } else if (f.degree() == 1) {
    v.kind = STKind::ST;
    v.justification = "linear forms in two or more variables always split";
  } else if (v.st_dim >= 2) {
    v.kind = STKind::ST;
    v.justification = "dim S(f) = " + std::to_string(v.st_dim) +
                      " >= 2: a generic member independent of f is smooth with the same Jacobi "
                      "ideal, so the two divisors split";
  } else {
    v.kind = STKind::NotST;
    v.justification = "dim S(f) = 1: every split f1 + f2 would put f1 + 2 f2 in S(f)";
  }
  return v;
}

// --- pencils ---------------------------------------------------------------

UPoly pencil_minor_gcd(const HomPoly& f, const HomPoly& g) {
  require_same_ring(f, g);
  if (f.degree() < 2) throw PreconditionViolation("pencil rank drop needs degree >= 2");
  const Field field = f.field();
  const GradedPiece piece(f.num_vars(), f.degree() - 1);
  const Matrix mf = partials_columns(f, piece);
  const Matrix mg = partials_columns(g, piece);
  const std::size_t rows = piece.dim();
  const std::size_t cols = f.num_vars();
  // Transposed coefficient matrix of f + t g: one row per monomial of A_{k-1}.
  std::vector<std::vector<UPoly>> t(rows, std::vector<UPoly>(cols, UPoly(field)));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) t[r][c] = UPoly(field, {mf(r, c), mg(r, c)});
  // Unimodular row operations over K[t] preserve the ideal of maximal minors;
  // the triangular result has a single nonzero maximal minor.
  UPoly product = UPoly::constant(Scalar::one(field));
  for (std::size_t c = 0; c < cols; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t r = c; r < rows; ++r)
        if (!t[r][c].is_zero() && (best == rows || t[r][c].degree() < t[best][c].degree())) best = r;
      if (best == rows) return UPoly(field);
      std::swap(t[c], t[best]);
      bool cleared = true;
      for (std::size_t r = c + 1; r < rows; ++r) {
        if (t[r][c].is_zero()) continue;
        const UPoly q = divmod(t[r][c], t[c][c]).first;
        for (std::size_t j = c; j < cols; ++j) t[r][j] = t[r][j] - q * t[c][j];
        if (!t[r][c].is_zero()) cleared = false;
      }
      if (cleared) break;
    }
    product = product * t[c][c];
  }
  return product.monic();
}

std::vector<PencilRoot> find_singular_member(const HomPoly& f, const HomPoly& g) {
  require_same_ring(f, g);
  if (proportional(f, g)) throw PreconditionViolation("pencil generators are not independent");
  const UPoly minors = pencil_minor_gcd(f, g);
  if (minors.is_zero()) throw DegeneratePencil("every member of the pencil has dependent partials");
  const Field field = f.field();
  std::vector<PencilRoot> out;
  const RootSplit split = base_field_roots(minors);
  for (const auto& r : split.roots) out.push_back(PencilPoint{Scalar::one(field), r});
  // (0 : 1) is invisible after setting lambda = 1.
  const GradedPiece piece(f.num_vars(), f.degree() - 1);
  if (rank(partials_columns(g, piece)) < f.num_vars())
    out.push_back(PencilPoint{Scalar::zero(field), Scalar::one(field)});
  if (split.remainder.degree() > 0) out.push_back(DeferredRoots{split.remainder});
  return out;
}

// --- splitting coordinates, transfer matrix, alignment ----------------------

SplittingCoordinates splitting_coordinates(const HomPoly& F) {
  if (F.is_zero() || F.degree() == 0) throw PreconditionViolation("splitting a zero or constant form");
  const std::size_t n1 = F.num_vars();
  const Field field = F.field();
  const GradedPiece piece(n1, F.degree() - 1);
  const Subspace directions = kernel(partials_columns(F, piece));
  if (directions.dim() == 0) throw PreconditionViolation("partials are independent: nothing to split");
  std::vector<Vector> columns = directions.basis_vectors();
  for (std::size_t j = 0; j < n1 && columns.size() < n1; ++j) {
    Vector e(n1, Scalar::zero(field));
    e[j] = Scalar::one(field);
    if (!member(Subspace::span(field, n1, columns), e)) columns.push_back(std::move(e));
  }
  Matrix a(field, n1, n1);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) a(j, i) = columns[i][j];
  return {CoordinateChange(std::move(a)), directions.dim() - 1};
}

Matrix jacobi_transfer_matrix(const HomPoly& F, const HomPoly& f, std::size_t split) {
  require_same_ring(f, F);
  const std::size_t n1 = f.num_vars();
  if (split + 1 >= n1) throw PreconditionViolation("split index must satisfy l < n");
  for (std::size_t i = 0; i <= split; ++i)
    if (!partial_derivative(F, i).is_zero())
      throw PreconditionViolation("coordinates are not arranged: dF/dx_" + std::to_string(i) + " != 0");
  const GradedPiece piece(n1, f.degree() - 1);
  const Matrix basis = partials_columns(f, piece);
  if (rank(basis) < n1) throw PreconditionViolation("partials of f are dependent (f is singular)");
  Matrix a(f.field(), n1, n1);
  for (std::size_t i = 0; i < n1; ++i) {
    const Vector target = coeff_vector(partial_derivative(F, i), piece);
    const auto x = solve(basis, target);
    if (!x) throw PreconditionViolation("dF/dx_" + std::to_string(i) + " is not in J(f)");
    for (std::size_t j = 0; j < n1; ++j) a(i, j) = (*x)[j];
  }
  if (determinant(a.block(split + 1, n1, split + 1, n1)).is_zero())
    throw TransferContradiction("lower-right block of the transfer matrix is singular, "
                                "which forces a singular point of f at the split coordinates");
  return a;
}

CoordinateChange alignment_change(const HomPoly& f, const HomPoly& F, const Matrix& transfer,
                                  std::size_t split) {
  require_same_ring(f, F);
  const std::size_t n1 = f.num_vars();
  if (transfer.rows() != n1 || transfer.cols() != n1) throw DimensionMismatch("transfer matrix size");
  if (split + 1 >= n1) throw PreconditionViolation("split index must satisfy l < n");
  const Field field = f.field();
  const Matrix lower_right = transfer.block(split + 1, n1, split + 1, n1);
  const Matrix lower_left = transfer.block(split + 1, n1, 0, split + 1);
  const auto inv = inverse(lower_right);
  if (!inv) throw PreconditionViolation("transfer matrix block is singular: no shear exists");
  // Row i of R^{-1} L gives the b_ij (j <= l) with df/dx_i + sum b_ij df/dx_j in J(F).
  const Matrix b = *inv * lower_left;
  Matrix a = Matrix::identity(field, n1);
  for (std::size_t i = split + 1; i < n1; ++i)
    for (std::size_t j = 0; j <= split; ++j) a(j, i) = b(i - split - 1, j);
  CoordinateChange change(std::move(a));

  const HomPoly fx = substitute_linear(f, change);
  const HomPoly Fx = substitute_linear(F, change);
  for (std::size_t i = 0; i <= split; ++i)
    if (!partial_derivative(Fx, i).is_zero())
      throw ConsistencyFailure("alignment broke dF/dX_i = 0 for i <= l");
  const JacobiPiece jf = jacobi_piece(Fx);
  const GradedPiece piece(n1, f.degree() - 1);
  for (std::size_t i = split + 1; i < n1; ++i)
    if (!member(jf.piece, coeff_vector(partial_derivative(fx, i), piece)))
      throw ConsistencyFailure("alignment failed: df/dX_" + std::to_string(i) + " is not in J(F)");
  return change;
}

// --- assembling and verifying the split -------------------------------------

bool mixed_hessian_vanishes(const HomPoly& g, std::size_t split) {
  for (std::size_t i = 0; i <= split && i < g.num_vars(); ++i) {
    const HomPoly di = partial_derivative(g, i);
    for (std::size_t j = split + 1; j < g.num_vars(); ++j)
      if (!partial_derivative(di, j).is_zero()) return false;
  }
  return true;
}

bool supports_split(const HomPoly& g, std::size_t split) {
  for (const auto& [m, c] : g.terms()) {
    bool first = false;
    bool second = false;
    for (std::size_t i = 0; i < g.num_vars(); ++i) {
      if (m[i] == 0) continue;
      (i <= split ? first : second) = true;
    }
    if (first && second) return false;
  }
  return true;
}

bool verify_decomposition(const HomPoly& f, const STDecomposition& d) {
  const std::size_t n1 = f.num_vars();
  if (d.change.size() != n1 || d.change.field() != f.field()) return false;
  if (n1 < 2 || d.split + 1 >= n1) return false;
  if (d.f1.is_zero() || d.f2.is_zero()) return false;
  for (const HomPoly* part : {&d.f1, &d.f2})
    if (part->num_vars() != n1 || part->degree() != f.degree() || part->field() != f.field())
      return false;
  for (std::size_t v : d.f1.support())
    if (v > d.split) return false;
  for (std::size_t v : d.f2.support())
    if (v <= d.split) return false;
  const HomPoly fx = substitute_linear(f, d.change);
  if (fx != d.f1 + d.f2) return false;
  return mixed_hessian_vanishes(fx, d.split) && supports_split(fx, d.split);
}

STDecomposition decomposition_from_member(const HomPoly& f, const HomPoly& F) {
  const SplittingCoordinates split_coords = splitting_coordinates(F);
  const std::size_t l = split_coords.split;
  const HomPoly f1 = substitute_linear(f, split_coords.change);
  const HomPoly F1 = substitute_linear(F, split_coords.change);
  const Matrix a = jacobi_transfer_matrix(F1, f1, l);
  const CoordinateChange align = alignment_change(f1, F1, a, l);
  const CoordinateChange total = compose(split_coords.change, align);
  const HomPoly fx = substitute_linear(f, total);
  if (!mixed_hessian_vanishes(fx, l))
    throw ConsistencyFailure("mixed Hessian block does not vanish after alignment");
  STDecomposition d{total, l, HomPoly(f.field(), f.num_vars(), f.degree()),
                    HomPoly(f.field(), f.num_vars(), f.degree())};
  for (const auto& [m, c] : fx.terms()) {
    bool first_block = true;
    for (std::size_t i = l + 1; i < f.num_vars(); ++i)
      if (m[i] > 0) first_block = false;
    (first_block ? d.f1 : d.f2).add_term(m, c);
  }
  if (!verify_decomposition(f, d)) throw ConsistencyFailure("extracted decomposition fails verification");
  return d;
}

std::string to_string(ExtractionStatus status) {
  switch (status) {
    case ExtractionStatus::Decomposed: return "DECOMPOSED";
    case ExtractionStatus::NeedsExtension: return "NEEDS_EXTENSION";
    case ExtractionStatus::NotST: return "NOT_ST";
  }
  return "UNKNOWN";
}

namespace {

HomPoly combine(const std::vector<HomPoly>& basis, const std::vector<long>& coeffs) {
  HomPoly g(basis.front().field(), basis.front().num_vars(), basis.front().degree());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i] != 0) g += basis[i] * Scalar(g.field(), coeffs[i]);
  return g;
}

// Quadrics split by completing a square: pick v with f(v) != 0 and use v
// followed by its orthogonal complement. The pencil route is not used here
// because a rank-one member such as x^2 against xy + z^2 leaves a singular
// transfer block even though f is smooth.
STDecomposition split_quadric(const HomPoly& f) {
  const std::size_t n1 = f.num_vars();
  const Field field = f.field();
  const Scalar half = Scalar(field, 2).inverse();
  Matrix b(field, n1, n1);
  for (const auto& [m, c] : f.terms()) {
    std::size_t i = n1, j = n1;
    for (std::size_t v = 0; v < n1; ++v)
      for (unsigned e = 0; e < m[v]; ++e) (i == n1 ? i : j) = v;
    if (m[i] == 2) {
      b(i, i) = c;
    } else {
      b(i, j) = c * half;
      b(j, i) = c * half;
    }
  }
  std::optional<Vector> v;
  for (std::size_t i = 0; i < n1 && !v; ++i)
    for (std::size_t j = i; j < n1 && !v; ++j) {
      Vector e(n1, Scalar::zero(field));
      e[i] = Scalar::one(field);
      e[j] = Scalar::one(field);
      if (!f.evaluate(e).is_zero()) v = e;
    }
  if (!v) throw ConsistencyFailure("smooth quadric vanishes on every coordinate pair");
  const Vector w = b.apply(*v);
  Matrix bv(field, 1, n1);
  for (std::size_t j = 0; j < n1; ++j) bv(0, j) = w[j];
  const std::vector<Vector> complement = kernel(bv).basis_vectors();
  Matrix change(field, n1, n1);
  for (std::size_t r = 0; r < n1; ++r) {
    change(r, 0) = (*v)[r];
    for (std::size_t c = 0; c + 1 < n1; ++c) change(r, c + 1) = complement[c][r];
  }
  STDecomposition d{CoordinateChange(change), 0, HomPoly(field, n1, 2), HomPoly(field, n1, 2)};
  const HomPoly fx = substitute_linear(f, d.change);
  for (const auto& [m, c] : fx.terms()) (m[0] > 0 ? d.f1 : d.f2).add_term(m, c);
  if (!verify_decomposition(f, d)) throw ConsistencyFailure("quadric split fails verification");
  return d;
}

}  // namespace

ExtractionResult extract_decomposition(const HomPoly& f, const ExtractionOptions& options) {
  if (f.degree() < 2) throw PreconditionViolation("extraction needs degree >= 2");
  if (!is_smooth(f)) throw UnsupportedInput("singular divisor: Theorem applies to smooth divisors only");
  ExtractionResult result;
  const STSpace s = st_space(f);
  result.st_dim = s.dim();
  if (s.dim() < 2 || f.num_vars() < 2) {
    result.status = ExtractionStatus::NotST;
    return result;
  }
  if (f.degree() == 2) {
    result.decomposition = split_quadric(f);
    result.status = ExtractionStatus::Decomposed;
    return result;
  }
  const std::vector<HomPoly> basis = s.basis();
  const std::size_t m = basis.size();

  std::set<std::string> seen_deferred;
  auto try_candidate = [&](const HomPoly& g) -> bool {
    if (g.is_zero() || proportional(f, g)) return false;
    ++result.candidates_tried;
    std::vector<PencilRoot> roots;
    try {
      roots = find_singular_member(f, g);
    } catch (const DegeneratePencil&) {
      return false;
    }
    for (const auto& root : roots) {
      if (const auto* deferred = std::get_if<DeferredRoots>(&root)) {
        if (seen_deferred.insert(deferred->polynomial.to_string()).second)
          result.deferred.push_back(deferred->polynomial);
        continue;
      }
      const auto& point = std::get<PencilPoint>(root);
      const HomPoly F = f * point.lambda + g * point.mu;
      if (F.is_zero()) continue;
      result.decomposition = decomposition_from_member(f, F);
      result.status = ExtractionStatus::Decomposed;
      return true;
    }
    return false;
  };

  for (const auto& g : basis)
    if (try_candidate(g)) return result;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (long c : {1L, -1L, 2L, -2L}) {
        std::vector<long> coeffs(m, 0);
        coeffs[i] = 1;
        coeffs[j] = c;
        if (try_candidate(combine(basis, coeffs))) return result;
      }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<long> pick(-5, 5);
  for (std::size_t attempt = 0; attempt < options.attempts; ++attempt) {
    std::vector<long> coeffs(m);
    for (auto& c : coeffs) c = pick(rng);
    if (try_candidate(combine(basis, coeffs))) return result;
  }
  if (result.deferred.empty())
    throw ConsistencyFailure("dim S(f) >= 2 but no pencil produced a rank-drop member");
  result.status = ExtractionStatus::NeedsExtension;
  return result;
}

}  // namespace torelli
