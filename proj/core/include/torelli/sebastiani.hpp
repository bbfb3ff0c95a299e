#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "torelli/errors.hpp"
#include "torelli/jacobi.hpp"
#include "torelli/linalg.hpp"
#include "torelli/polynomial.hpp"
#include "torelli/univariate.hpp"

namespace torelli {

/// S(f) = {g in A_k : dg/dx_j in J(f)_{k-1} for every j}. Always contains f.
struct STSpace {
  HomPoly f;
  Subspace space;

  std::size_t dim() const noexcept { return space.dim(); }
  std::vector<HomPoly> basis() const;
};

STSpace st_space(const HomPoly& f);

/// T(J) = {g in A_k : dg/dx_j in J for every j}, for a subspace J of A_{k-1}
/// in `num_vars` variables. st_space(f) is T(jacobi_piece(f)).
Subspace jacobi_closure(const Subspace& jacobi, std::size_t num_vars, unsigned k);

enum class STKind { ST, NotST };

struct STVerdict {
  STKind kind = STKind::NotST;
  std::size_t st_dim = 0;
  std::string justification;
};

/// Smooth f of degree k >= 2 is of Sebastiani-Thom type iff dim S(f) >= 2:
/// f1 + f2 gives the independent member f1 + 2 f2 of S(f); conversely a
/// generic member of S(f) independent of f is smooth with the same Jacobi
/// ideal, so the two divisors split. Linear forms in >= 2 variables are ST.
/// Throws UnsupportedInput for singular f.
STVerdict is_st(const HomPoly& f);

/// A base-field point (lambda : mu) of the pencil, first nonzero coordinate 1.
struct PencilPoint {
  Scalar lambda;
  Scalar mu;
};

/// Rank-drop points outside the base field: the roots t of `polynomial`
/// correspond to the points (1 : t).
struct DeferredRoots {
  UPoly polynomial;
};

using PencilRoot = std::variant<PencilPoint, DeferredRoots>;

/// The whole pencil has dependent partials.
class DegeneratePencil : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// gcd of the maximal minors of the partial-derivative coefficient matrix of
/// f + t g, as a polynomial in t (up to a unit). Computed by unimodular
/// triangularization over K[t]. Zero when the pencil is degenerate.
UPoly pencil_minor_gcd(const HomPoly& f, const HomPoly& g);

/// All (lambda : mu) with lambda f + mu g having dependent partials. Requires
/// f, g independent of one degree k >= 2; throws DegeneratePencil when every
/// member is rank deficient.
std::vector<PencilRoot> find_singular_member(const HomPoly& f, const HomPoly& g);

struct SplittingCoordinates {
  CoordinateChange change;
  std::size_t split = 0;  // l: after the change dF/dX_0..dF/dX_l vanish
};

/// Coordinates in which the first l+1 partials of F vanish and the remaining
/// n-l are independent. The first l+1 columns of the change are the canonical
/// basis of {c : sum c_i dF/dx_i = 0}; the rest are unit vectors chosen greedily.
SplittingCoordinates splitting_coordinates(const HomPoly& F);

/// The transfer matrix has a singular lower-right block, which smooth f rules
/// out: either f is singular or an upstream step produced a bad member.
class TransferContradiction : public ConsistencyFailure {
  using ConsistencyFailure::ConsistencyFailure;
};

/// The matrix (a_ij) with dF/dx_i = sum_j a_ij df/dx_j. Throws
/// TransferContradiction if its lower-right (n-l)x(n-l) block is singular.
Matrix jacobi_transfer_matrix(const HomPoly& F, const HomPoly& f, std::size_t split);

/// The shear x_j = X_j + sum_{i>l} b_ij X_i (j <= l) after which dF/dX_i = 0
/// for i <= l and df/dX_i lies in J(F) for i > l. Both identities are
/// rechecked before returning.
CoordinateChange alignment_change(const HomPoly& f, const HomPoly& F, const Matrix& transfer,
                                  std::size_t split);

/// f o change = f1 + f2 with f1 in X_0..X_l and f2 in X_{l+1}..X_n.
struct STDecomposition {
  CoordinateChange change;
  std::size_t split = 0;
  HomPoly f1;
  HomPoly f2;
};

/// Every d^2 g / dX_i dX_j with i <= split < j vanishes.
bool mixed_hessian_vanishes(const HomPoly& g, std::size_t split);
/// No monomial of g mixes X_0..X_split with the remaining variables.
bool supports_split(const HomPoly& g, std::size_t split);

bool verify_decomposition(const HomPoly& f, const STDecomposition& d);

/// Full split (coordinates, transfer, alignment, check) from one pencil
/// member F with dependent partials whose partials lie in J(f).
STDecomposition decomposition_from_member(const HomPoly& f, const HomPoly& F);

enum class ExtractionStatus { Decomposed, NeedsExtension, NotST };

std::string to_string(ExtractionStatus status);

struct ExtractionOptions {
  std::size_t attempts = 32;  // randomized candidates after the deterministic ones
  std::uint64_t seed = 0;
};

struct ExtractionResult {
  ExtractionStatus status = ExtractionStatus::NotST;
  std::optional<STDecomposition> decomposition;
  std::vector<UPoly> deferred;  // rank-drop polynomials with no base-field root
  std::size_t st_dim = 0;
  std::size_t candidates_tried = 0;
};

/// Constructive splitting of a smooth f of degree >= 2. Members g of S(f)
/// independent of f are tried in a fixed order (basis vectors, then pairwise
/// small-integer combinations, then seeded random combinations); each pencil
/// f, g is searched for base-field rank-drop members F, which are run through
/// the splitting, transfer and alignment steps. Quadrics are split directly by
/// completing a square. Throws UnsupportedInput for singular f.
ExtractionResult extract_decomposition(const HomPoly& f, const ExtractionOptions& options = {});

}  // namespace torelli
