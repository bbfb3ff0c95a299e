#pragma once

#include <cstddef>

#include "torelli/polynomial.hpp"
#include "torelli/sebastiani.hpp"

namespace torelli {

// Ternary cubic coefficients are indexed a_0..a_9 along the descending
// monomial basis x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.

enum class RowOrder { Natural, Reversed };

struct InvariantDerivation {
  HomPoly invariant;                  // degree 4 in a_0..a_9, leading coefficient 1
  std::size_t kernel_dim = 0;
  std::size_t weight_zero_monomials = 0;
};

/// Solves for the degree-4 polynomials in the cubic coefficients annihilated
/// by the eight sl_3 operators x_i d/dx_j (i != j), x_0 d/dx_0 - x_1 d/dx_1 and
/// x_1 d/dx_1 - x_2 d/dx_2. Throws ConsistencyFailure unless the solution space
/// is a line.
InvariantDerivation derive_invariant(RowOrder order = RowOrder::Natural);

/// The derived invariant, computed once.
const HomPoly& cubic_invariant();

/// True iff all eight operators kill P (P of any degree in the 10 coefficients).
bool annihilated_by_sl3(const HomPoly& P);

/// The invariant evaluated at a ternary cubic over Q.
Scalar invariant_value(const HomPoly& cubic);

/// Vanishing of the j-invariant for a smooth plane cubic over Q. Throws
/// UnsupportedInput for singular, non-cubic, non-ternary or prime-field input.
bool j_is_zero(const HomPoly& cubic);

struct CorollaryRecord {
  STKind st = STKind::NotST;
  std::size_t st_dim = 0;
  bool j_zero = false;
  bool agree = false;  // (st == ST) <=> j_zero
};

CorollaryRecord corollary_check(const HomPoly& cubic);

}  // namespace torelli
