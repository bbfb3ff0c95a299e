#include <doctest.h>

#include "oracles.hpp"
#include "torelli/errors.hpp"
#include "torelli/verdict.hpp"

using namespace torelli;

namespace {

const Field Q = Field::rationals();

HomPoly P(const char* text, std::size_t vars = 3) {
  return parse_poly(text, default_var_names(vars), Q);
}

Scalar S(long v) { return Scalar(Q, v); }

}  // namespace

TEST_CASE("torelli_verdict examples") {
  const TorelliVerdict fermat = torelli_verdict(P("x^3+y^3+z^3"));
  CHECK(fermat.status == TorelliStatus::NotTorelli);
  REQUIRE(fermat.witness);
  CHECK(verify_decomposition(P("x^3+y^3+z^3"), *fermat.witness));
  CHECK(fermat.justification.st_dim == 3);
  REQUIRE(fermat.justification.smoothness);
  CHECK(fermat.justification.smoothness->smooth);

  const TorelliVerdict w = torelli_verdict(P("y^2*z - x^3 - x*z^2"));
  CHECK(w.status == TorelliStatus::Torelli);
  CHECK_FALSE(w.witness);
  CHECK(w.justification.st_dim == 1);

  const TorelliVerdict xyz = torelli_verdict(P("x*y*z"));
  CHECK(xyz.status == TorelliStatus::Unsupported);
  CHECK(xyz.reason == "singular divisor: Theorem applies to smooth divisors only");
}

TEST_CASE("torelli_verdict edge cases") {
  CHECK(torelli_verdict(HomPoly(Q, 3, 0)).status == TorelliStatus::Unsupported);
  CHECK(torelli_verdict(P("x^3", 1)).status == TorelliStatus::Unsupported);
  const TorelliVerdict line = torelli_verdict(P("x + 2*y - z"));
  CHECK(line.status == TorelliStatus::NotTorelli);
  REQUIRE(line.witness);
  CHECK(verify_decomposition(P("x + 2*y - z"), *line.witness));
  CHECK(torelli_verdict(P("x^2 + y^2")).status == TorelliStatus::Unsupported);
  const TorelliVerdict quadric = torelli_verdict(P("x*y + z^2"));
  CHECK(quadric.status == TorelliStatus::NotTorelli);
  REQUIRE(quadric.witness);
  CHECK(verify_decomposition(P("x*y + z^2"), *quadric.witness));
  const HomPoly f3 = parse_poly("x^3+y^3+z^3", default_var_names(3), Field::prime(3));
  CHECK(torelli_verdict(f3).status == TorelliStatus::Unsupported);
  const HomPoly f5 = parse_poly("y^2*z - x^3 - x*z^2", default_var_names(3), Field::prime(5));
  CHECK(torelli_verdict(f5).status == TorelliStatus::Torelli);
}

TEST_CASE("verdicts survive coordinate changes") {
  oracle::Rng rng(109);
  const std::vector<HomPoly> samples{P("x^3+y^3+z^3"), P("y^2*z - x^3 - x*z^2"),
                                     P("x^3 + y^3 + z^3 + x*y*z"), P("x^4 + y^4 + z^4 + x^2*y*z")};
  for (const auto& f : samples) {
    const TorelliStatus base = torelli_verdict(f).status;
    for (int trial = 0; trial < 3; ++trial) {
      const HomPoly g = substitute_linear(f, oracle::random_rational_change(rng, 3));
      const TorelliVerdict v = torelli_verdict(g);
      CHECK(v.status == base);
      if (v.witness) CHECK(verify_decomposition(g, *v.witness));
    }
  }
}

TEST_CASE("jacobi_jump_indicator") {
  const HomPoly f = P("x^3+y^3+z^3");
  const JumpReport a = jacobi_jump_indicator(f, P("x^2"));
  CHECK(a.indicator_dim == 1);
  CHECK(a.jumped);
  const JumpReport b = jacobi_jump_indicator(f, P("x*y"));
  CHECK(b.indicator_dim == 0);
  CHECK_FALSE(b.jumped);
  const HomPoly q = P("x^4 + y^4 + z^4 + w^4 + x*y*z*w", 4);
  CHECK(jacobi_jump_indicator(q, partial_derivative(q, 0)).indicator_dim == 1);

  CHECK_THROWS_AS(jacobi_jump_indicator(f, P("x^3")), DimensionMismatch);
  CHECK_THROWS_AS(jacobi_jump_indicator(f, HomPoly(Q, 3, 2)), PreconditionViolation);
  CHECK_THROWS_AS(jacobi_jump_indicator(P("x*y*z"), P("x^2")), UnsupportedInput);
}

TEST_CASE("jump_locus_filter") {
  const HomPoly f = P("x^3+y^3+z^3");
  std::vector<HomPoly> monomials;
  const GradedPiece a2(3, 2);
  for (const auto& m : a2.basis()) monomials.push_back(HomPoly::monomial(m, S(1)));
  const auto reports = jump_locus_filter(f, monomials);
  REQUIRE(reports.size() == 6);
  std::vector<std::string> jumped;
  for (const auto& r : reports)
    if (r.jumped) jumped.push_back(format_poly(r.g));
  CHECK(jumped == std::vector<std::string>{"x^2", "y^2", "z^2"});

  for (const auto& r : jump_locus_filter(f, gradient(f))) CHECK(r.jumped);
  CHECK(jump_locus_filter(f, {}).empty());

  const auto mixed = jump_locus_filter(f, {P("x^2"), P("x^3"), HomPoly(Q, 3, 2)});
  REQUIRE(mixed.size() == 3);
  CHECK(mixed[0].jumped);
  CHECK(mixed[1].error);
  CHECK_FALSE(mixed[1].jumped);
  CHECK(mixed[2].error);
}

TEST_CASE("jump indicator agrees with direct membership") {
  oracle::Rng rng(113);
  const std::vector<HomPoly> fs{P("x^3+y^3+z^3"), P("y^2*z - x^3 - x*z^2"),
                                P("x^4 + y^4 + z^4 - x*y*z^2")};
  for (const auto& f : fs) {
    const JacobiPiece j = jacobi_piece(f);
    std::vector<HomPoly> gs = gradient(f);
    for (int t = 0; t < 20; ++t) {
      // half random, half random combinations of partials
      if (t % 2) {
        gs.push_back(oracle::random_form(rng, 3, f.degree() - 1, 3, 0.6));
      } else {
        HomPoly g(Q, 3, f.degree() - 1);
        std::uniform_int_distribution<int> c(-3, 3);
        for (const auto& d : gradient(f)) g += S(c(rng)) * d;
        gs.push_back(g);
      }
    }
    for (const auto& g : gs) {
      if (g.is_zero()) continue;
      const bool in = member(j.piece, coeff_vector(g, f.degree() - 1));
      CHECK(in == oracle::in_jacobi_span(f, g));
      CHECK(jacobi_jump_indicator(f, g).jumped == in);
    }
  }
}

TEST_CASE("divisors_with_jacobi_piece") {
  SUBCASE("Fermat") {
    const HomPoly f = P("x^3+y^3+z^3");
    const ReconstructionFamily fam = divisors_with_jacobi_piece(jacobi_piece(f).piece, 3, 3);
    CHECK(fam.dim() == 3);
    CHECK(fam.contains(P("x^3")));
    CHECK(fam.contains(P("2*x^3 - 5*z^3")));
    CHECK_FALSE(fam.contains(P("x^2*y")));
    const Scalar c[] = {S(1), S(2), S(-3)};
    const HomPoly m = fam.member(c);
    CHECK(fam.realizes(m));
    CHECK_FALSE(fam.realizes(P("x^3 + y^3")));
    // basis vectors x^3, y^3, z^3 are singular, so none realizes J on its own
    for (bool b : fam.basis_realizes()) CHECK_FALSE(b);
  }
  SUBCASE("Weierstrass") {
    const HomPoly f = P("y^2*z - x^3 - x*z^2");
    const ReconstructionFamily fam = divisors_with_jacobi_piece(jacobi_piece(f).piece, 3, 3);
    CHECK(fam.dim() == 1);
    CHECK(fam.contains(f));
    CHECK(fam.basis_realizes() == std::vector<bool>{true});
  }
  SUBCASE("zero piece") {
    const ReconstructionFamily fam = divisors_with_jacobi_piece(Subspace::zero(Q, 6), 3, 3);
    CHECK(fam.dim() == 0);
  }
}

TEST_CASE("reconstruction is a line for non-split smooth forms") {
  oracle::Rng rng(127);
  int found = 0;
  for (int trial = 0; trial < 60 && found < 6; ++trial) {
    const HomPoly f = oracle::random_form(rng, 3, 3 + trial % 2, 2, 0.6);
    if (f.is_zero() || !is_smooth(f) || oracle::st_dim(f) != 1) continue;
    ++found;
    const ReconstructionFamily fam = divisors_with_jacobi_piece(jacobi_piece(f).piece, 3, f.degree());
    CHECK(fam.dim() == 1);
    CHECK(fam.contains(f));
  }
  CHECK(found == 6);
}

TEST_CASE("pencil_hilbert_invariance") {
  const auto h = pencil_hilbert_invariance(P("x^3"), P("y^3+z^3"),
                                           {{S(1), S(1)}, {S(1), S(2)}, {S(3), S(5)}}, 4);
  CHECK(h.invariant);
  CHECK(h.tables.size() == 3);
  CHECK(pencil_hilbert_invariance(P("x^4"), P("y^4+z^4"), {{S(1), S(1)}, {S(2), S(1)}}, 4).invariant);
  CHECK(pencil_hilbert_invariance(P("x^3"), P("y^3+z^3"), {{S(1), S(1)}}, 3).invariant);
  CHECK_THROWS_AS(pencil_hilbert_invariance(P("x^3"), P("y^3+z^3"), {{S(0), S(1)}}, 3),
                  PreconditionViolation);
  CHECK_THROWS_AS(pencil_hilbert_invariance(P("x^3 + y^3"), P("y^3+z^3"), {{S(1), S(1)}}, 3),
                  PreconditionViolation);
}
