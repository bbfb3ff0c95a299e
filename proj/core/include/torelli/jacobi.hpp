#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "torelli/linalg.hpp"
#include "torelli/polynomial.hpp"

namespace torelli {

/// The degree k-1 piece of the Jacobi ideal: span of the n+1 partials inside A_{k-1}.
struct JacobiPiece {
  unsigned degree = 0;  // k, the degree of f
  Subspace piece;

  std::size_t dim() const noexcept { return piece.dim(); }
};

JacobiPiece jacobi_piece(const HomPoly& f);

/// True iff the n+1 partials are linearly independent.
bool partials_independent(const HomPoly& f);

enum class SmoothnessMethod { Hyperplane, QuadricMatrix, MultiplesFullness };

std::string to_string(SmoothnessMethod method);

/// How smoothness was decided. For MultiplesFullness, `test_degree` is
/// D = (n+1)(k-2)+1 and smoothness holds iff the multiples of the partials
/// reach rank dim A_D.
struct SmoothnessCertificate {
  bool smooth = false;
  SmoothnessMethod method = SmoothnessMethod::MultiplesFullness;
  unsigned test_degree = 0;
  std::size_t rank = 0;
  std::size_t target_dim = 0;
};

/// Decides whether V(f) is smooth over the algebraic closure. Degree 1 and 2
/// use direct criteria; higher degrees use the multiples-fullness test.
/// Throws PreconditionViolation for k = 0.
SmoothnessCertificate smoothness_certificate(const HomPoly& f);
bool is_smooth(const HomPoly& f);

/// The multiples-fullness test applied for every k >= 2, without the degree
/// shortcuts. Cross-checks the quadric special case.
SmoothnessCertificate smoothness_by_multiples(const HomPoly& f);

/// The matrix whose rows are the coefficient vectors of m * g for every g in
/// `gens` (all of one degree e) and every monomial m of degree `target - e`.
Matrix multiples_matrix(const std::vector<HomPoly>& gens, unsigned target);

/// dim D0(-log f)_d for d = 0..d_max: kernel dimension of
/// (A_d)^{n+1} -> A_{d+k-1}, (delta_i) -> sum_i delta_i df/dx_i.
struct HilbertFunction {
  std::vector<std::size_t> dims;

  friend bool operator==(const HilbertFunction&, const HilbertFunction&) = default;
};

HilbertFunction log_derivation_dims(const HomPoly& f, unsigned d_max);

}  // namespace torelli
