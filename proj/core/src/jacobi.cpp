#include "torelli/jacobi.hpp"

#include "torelli/errors.hpp"

namespace torelli {

JacobiPiece jacobi_piece(const HomPoly& f) {
  if (f.degree() == 0) throw PreconditionViolation("Jacobi piece of a constant");
  const GradedPiece piece(f.num_vars(), f.degree() - 1);
  std::vector<Vector> rows;
  for (const auto& g : gradient(f)) rows.push_back(coeff_vector(g, piece));
  return {f.degree(), Subspace::span(f.field(), piece.dim(), rows)};
}

bool partials_independent(const HomPoly& f) { return jacobi_piece(f).dim() == f.num_vars(); }

std::string to_string(SmoothnessMethod method) {
  switch (method) {
    case SmoothnessMethod::Hyperplane: return "hyperplane";
    case SmoothnessMethod::QuadricMatrix: return "quadric-matrix";
    case SmoothnessMethod::MultiplesFullness: return "multiples-fullness";
  }
  return "unknown";
}

Matrix multiples_matrix(const std::vector<HomPoly>& gens, unsigned target) {
  if (gens.empty()) throw PreconditionViolation("no generators");
  const Field field = gens.front().field();
  const std::size_t n = gens.front().num_vars();
  const unsigned e = gens.front().degree();
  if (target < e) throw PreconditionViolation("target degree below generator degree");
  const GradedPiece shifts(n, target - e);
  const GradedPiece columns(n, target);
  Matrix m(field, gens.size() * shifts.dim(), columns.dim());
  std::size_t row = 0;
  for (const auto& g : gens) {
    if (g.degree() != e) throw DimensionMismatch("generators of mixed degree");
    for (const auto& shift : shifts.basis()) {
      for (const auto& [mono, c] : g.terms()) m(row, columns.index_of(mono * shift)) = c;
      ++row;
    }
  }
  return m;
}

SmoothnessCertificate smoothness_by_multiples(const HomPoly& f) {
  if (f.degree() == 0) throw PreconditionViolation("smoothness of a constant is undefined");
  SmoothnessCertificate cert;
  cert.method = SmoothnessMethod::MultiplesFullness;
  const std::size_t n1 = f.num_vars();
  if (f.is_zero()) {
    cert.test_degree = 0;
    return cert;
  }
  if (f.degree() == 1) {
    // A nonzero linear form has a nonvanishing constant partial.
    cert.smooth = true;
    cert.rank = cert.target_dim = 1;
    return cert;
  }
  cert.test_degree = static_cast<unsigned>(n1 * (f.degree() - 2) + 1);
  const Matrix m = multiples_matrix(gradient(f), cert.test_degree);
  cert.target_dim = m.cols();
  cert.rank = rank(m);
  cert.smooth = cert.rank == cert.target_dim;
  return cert;
}

SmoothnessCertificate smoothness_certificate(const HomPoly& f) {
  if (f.degree() == 0) throw PreconditionViolation("smoothness of a constant is undefined");
  SmoothnessCertificate cert;
  if (f.degree() == 1) {
    cert.method = SmoothnessMethod::Hyperplane;
    cert.test_degree = 1;
    cert.target_dim = 1;
    cert.rank = f.is_zero() ? 0 : 1;
    cert.smooth = !f.is_zero();
    return cert;
  }
  if (f.degree() == 2) {
    // Smooth iff the constant Hessian (twice the symmetric coefficient matrix) is invertible.
    const auto h = hessian(f);
    const std::size_t n1 = f.num_vars();
    Matrix m(f.field(), n1, n1);
    const Monomial one = Monomial::one(n1);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) m(i, j) = h[i][j].coefficient(one);
    cert.method = SmoothnessMethod::QuadricMatrix;
    cert.test_degree = 0;
    cert.target_dim = n1;
    cert.rank = rank(m);
    cert.smooth = cert.rank == n1;
    return cert;
  }
  return smoothness_by_multiples(f);
}

bool is_smooth(const HomPoly& f) { return smoothness_certificate(f).smooth; }

HilbertFunction log_derivation_dims(const HomPoly& f, unsigned d_max) {
  const auto partials = gradient(f);
  const std::size_t n1 = f.num_vars();
  const unsigned pd = f.degree() == 0 ? 0 : f.degree() - 1;
  HilbertFunction out;
  for (unsigned d = 0; d <= d_max; ++d) {
    const GradedPiece source(n1, d);
    const GradedPiece target(n1, d + pd);
    // Column (i, m) holds the coefficients of m * df/dx_i.
    Matrix map(f.field(), target.dim(), n1 * source.dim());
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t s = 0; s < source.dim(); ++s)
        for (const auto& [mono, c] : partials[i].terms())
          map(target.index_of(mono * source.basis()[s]), i * source.dim() + s) = c;
    out.dims.push_back(map.cols() - rank(map));
  }
  return out;
}

}  // namespace torelli
