#pragma once

// Independent reference computations for the test suites. These work on raw
// mpq_class data with their own naive elimination so that a bug in the
// library's linear algebra cannot hide itself.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "torelli/polynomial.hpp"

namespace oracle {

using QMatrix = std::vector<std::vector<mpq_class>>;
using QPoly = std::vector<mpq_class>;  // univariate, constant term first

std::size_t rank(QMatrix m);
/// Basis of the right null space, one vector per free column.
QMatrix null_space(QMatrix m);

/// Dense coefficients of f along every exponent vector of degree d, in
/// lexicographic enumeration order (not the library's order on purpose).
std::vector<std::vector<unsigned>> exponents(std::size_t num_vars, unsigned degree);
std::vector<mpq_class> dense(const torelli::HomPoly& f);
std::vector<mpq_class> dense_partial(const torelli::HomPoly& f, std::size_t i);

/// dim S(f) found by solving jointly for g in A_k and a matrix C with
/// dg/dx_j = sum_i C_ji df/dx_i, then projecting the solutions onto g.
std::size_t st_dim(const torelli::HomPoly& f);

/// True iff g lies in the span of the partials of f.
bool in_jacobi_span(const torelli::HomPoly& f, const torelli::HomPoly& g);

/// Squarefreeness of a binary form over Q: dehomogenize at the second
/// variable, check that at most a simple root sits at infinity and that
/// gcd(p, p') is constant.
bool binary_form_squarefree(const torelli::HomPoly& f);

QPoly qpoly_trim(QPoly p);
QPoly qpoly_rem(QPoly a, const QPoly& b);
QPoly qpoly_gcd(QPoly a, QPoly b);

/// Monic gcd of all maximal minors of the partial-derivative coefficient
/// matrix of f + t g, each minor expanded by cofactors over Q[t].
QPoly pencil_minor_gcd(const torelli::HomPoly& f, const torelli::HomPoly& g);

// --- random inputs ------------------------------------------------------

using Rng = std::mt19937_64;

/// Random form with integer coefficients in [-bound, bound]; each monomial is
/// kept with probability `density`.
torelli::HomPoly random_form(Rng& rng, std::size_t num_vars, unsigned degree, int bound,
                             double density = 1.0);
/// Random form supported on the variables listed in `vars`.
torelli::HomPoly random_form_in(Rng& rng, std::size_t num_vars, const std::vector<std::size_t>& vars,
                                unsigned degree, int bound, double density = 1.0);
/// Integer matrix with determinant +-1: a product of elementary shears and a
/// permutation.
torelli::CoordinateChange random_unimodular(Rng& rng, std::size_t n, int bound = 2);
/// Random invertible matrix with small rational entries.
torelli::CoordinateChange random_rational_change(Rng& rng, std::size_t n);

}  // namespace oracle
