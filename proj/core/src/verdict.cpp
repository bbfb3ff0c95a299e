#include "torelli/verdict.hpp"

#include <algorithm>

namespace torelli {

std::string to_string(TorelliStatus status) {
  switch (status) {
    case TorelliStatus::Torelli: return "TORELLI";
    case TorelliStatus::NotTorelli: return "NOT_TORELLI";
    case TorelliStatus::Unsupported: return "UNSUPPORTED";
  }
  return "UNKNOWN";
}

namespace {

// Linear form c.x in >= 2 variables: coordinates with c.x = X_0 + X_1.
STDecomposition split_linear_form(const HomPoly& f) {
  const std::size_t n1 = f.num_vars();
  const Field field = f.field();
  const Vector c = coeff_vector(f, 1);
  std::size_t pivot = 0;
  while (c[pivot].is_zero()) ++pivot;
  const std::size_t other = pivot == 0 ? 1 : 0;
  // Rows of the inverse change express X in terms of x.
  Matrix to_new(field, n1, n1);
  for (std::size_t j = 0; j < n1; ++j) to_new(0, j) = c[j];
  to_new(0, other) -= Scalar::one(field);
  to_new(1, other) = Scalar::one(field);
  std::size_t row = 2;
  for (std::size_t j = 0; j < n1; ++j)
    if (j != pivot && j != other) to_new(row++, j) = Scalar::one(field);
  const CoordinateChange change = CoordinateChange(to_new).inverted();
  STDecomposition d{change, 0, HomPoly::variable(field, n1, 0), HomPoly::variable(field, n1, 1)};
  if (!verify_decomposition(f, d)) throw ConsistencyFailure("linear split failed verification");
  return d;
}

}  // namespace

TorelliVerdict torelli_verdict(const HomPoly& f, const ExtractionOptions& options) {
  TorelliVerdict v;
  if (f.degree() == 0) {
    v.reason = "constant polynomial defines no divisor";
    return v;
  }
  if (f.num_vars() < 2) {
    v.reason = "projective space of dimension at least 1 required";
    return v;
  }
  const std::uint32_t p = f.field().characteristic();
  if (p != 0 && f.degree() >= p) {
    v.reason = "characteristic must exceed the degree";
    return v;
  }
  v.justification.smoothness = smoothness_certificate(f);
  if (!v.justification.smoothness->smooth) {
    v.reason = "singular divisor: Theorem applies to smooth divisors only";
    return v;
  }
  const STSpace s = st_space(f);
  v.justification.st_dim = s.dim();
  if (f.degree() == 1) {
    v.status = TorelliStatus::NotTorelli;
    v.witness = split_linear_form(f);
    v.justification.note = "hyperplane: every linear form splits";
    return v;
  }
  if (s.dim() < 2) {
    v.status = TorelliStatus::Torelli;
    v.justification.note = "dim S(f) = 1: not of Sebastiani-Thom type";
    return v;
  }
  const ExtractionResult extraction = extract_decomposition(f, options);
  v.status = TorelliStatus::NotTorelli;
  if (extraction.status == ExtractionStatus::Decomposed) {
    v.witness = extraction.decomposition;
    v.justification.note = "split f1 + f2; every mu*f1 + nu*f2 with mu*nu != 0 has the same "
                           "logarithmic vector fields";
  } else {
    v.needs_extension = true;
    v.deferred = extraction.deferred;
    v.justification.note = "dim S(f) >= 2 certifies a split, but the splitting pencil members are "
                           "defined only over an extension of the base field";
  }
  return v;
}

JumpReport jacobi_jump_indicator(const HomPoly& f, const HomPoly& g) {
  if (f.field() != g.field()) throw FieldMismatch("f and g over different fields");
  if (f.degree() == 0 || g.degree() + 1 != f.degree() || g.num_vars() != f.num_vars())
    throw DimensionMismatch("g must have degree deg f - 1 in the same variables");
  if (g.is_zero()) throw PreconditionViolation("g = 0 defines no divisor");
  if (!is_smooth(f)) throw UnsupportedInput("singular divisor: Theorem applies to smooth divisors only");
  const GradedPiece piece(f.num_vars(), g.degree());
  const std::size_t n1 = f.num_vars();
  // Columns: the partials of f, then g. With g != 0 the kernel projects
  // injectively onto the c-coordinates.
  Matrix m(f.field(), piece.dim(), n1 + 1);
  for (std::size_t i = 0; i < n1; ++i) {
    const Vector v = coeff_vector(partial_derivative(f, i), piece);
    for (std::size_t r = 0; r < piece.dim(); ++r) m(r, i) = v[r];
  }
  const Vector gv = coeff_vector(g, piece);
  for (std::size_t r = 0; r < piece.dim(); ++r) m(r, n1) = gv[r];
  JumpReport report{g, kernel(m).dim(), false, std::nullopt};
  report.jumped = report.indicator_dim > 0;
  return report;
}

std::vector<JumpReport> jump_locus_filter(const HomPoly& f, const std::vector<HomPoly>& candidates) {
  if (!is_smooth(f)) throw UnsupportedInput("singular divisor: Theorem applies to smooth divisors only");
  std::vector<JumpReport> out;
  out.reserve(candidates.size());
  for (const auto& g : candidates) {
    try {
      out.push_back(jacobi_jump_indicator(f, g));
    } catch (const std::exception& e) {
      out.push_back(JumpReport{g, 0, false, std::string(e.what())});
    }
  }
  return out;
}

ReconstructionFamily::ReconstructionFamily(Subspace jacobi, Subspace space, std::size_t num_vars,
                                           unsigned degree)
    : jacobi_(std::move(jacobi)), space_(std::move(space)), num_vars_(num_vars), degree_(degree) {}

std::vector<HomPoly> ReconstructionFamily::basis() const {
  const GradedPiece piece(num_vars_, degree_);
  std::vector<HomPoly> out;
  for (const auto& v : space_.basis_vectors()) out.push_back(from_coeff_vector(space_.field(), piece, v));
  return out;
}

HomPoly ReconstructionFamily::member(std::span<const Scalar> coords) const {
  if (coords.size() != dim()) throw DimensionMismatch("coordinate count differs from family dimension");
  HomPoly g(space_.field(), num_vars_, degree_);
  const auto b = basis();
  for (std::size_t i = 0; i < b.size(); ++i) g += b[i] * coords[i];
  return g;
}

bool ReconstructionFamily::contains(const HomPoly& g) const {
  if (g.num_vars() != num_vars_ || g.degree() != degree_ || g.field() != space_.field()) return false;
  return torelli::member(space_, coeff_vector(g, degree_));
}

bool ReconstructionFamily::realizes(const HomPoly& g) const {
  if (!contains(g) || g.is_zero() || !is_smooth(g)) return false;
  return jacobi_piece(g).piece == jacobi_;
}

std::vector<bool> ReconstructionFamily::basis_realizes() const {
  std::vector<bool> out;
  for (const auto& g : basis()) out.push_back(realizes(g));
  return out;
}

ReconstructionFamily divisors_with_jacobi_piece(const Subspace& jacobi, std::size_t num_vars,
                                                unsigned k) {
  return ReconstructionFamily(jacobi, jacobi_closure(jacobi, num_vars, k), num_vars, k);
}

PencilInvariance pencil_hilbert_invariance(const HomPoly& f1, const HomPoly& f2,
                                           const std::vector<std::pair<Scalar, Scalar>>& samples,
                                           unsigned d_max) {
  if (f1.field() != f2.field()) throw FieldMismatch("pencil parts over different fields");
  if (f1.num_vars() != f2.num_vars() || f1.degree() != f2.degree())
    throw DimensionMismatch("pencil parts of different degree or ring");
  const auto s1 = f1.support();
  const auto s2 = f2.support();
  if (std::any_of(s1.begin(), s1.end(), [&](std::size_t v) { return s2.count(v) > 0; }))
    throw PreconditionViolation("pencil parts share a variable");
  for (const auto& [mu, nu] : samples)
    if (mu.is_zero() || nu.is_zero()) throw PreconditionViolation("samples need mu != 0 and nu != 0");
  PencilInvariance out;
  for (const auto& [mu, nu] : samples) {
    out.tables.push_back(log_derivation_dims(f1 * mu + f2 * nu, d_max));
    if (out.tables.back() != out.tables.front()) out.invariant = false;
  }
  return out;
}

}  // namespace torelli
