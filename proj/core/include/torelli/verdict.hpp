#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "torelli/jacobi.hpp"
#include "torelli/sebastiani.hpp"

namespace torelli {

enum class TorelliStatus { Torelli, NotTorelli, Unsupported };

std::string to_string(TorelliStatus status);

/// Trace of how a verdict was reached.
struct VerdictJustification {
  std::optional<SmoothnessCertificate> smoothness;
  std::size_t st_dim = 0;
  std::string note;
};

/// Torelli iff f is not of Sebastiani-Thom type. NOT_TORELLI carries either a
/// verified decomposition, whose family mu*f1 + nu*f2 (mu, nu nonzero) shares
/// one sheaf of logarithmic vector fields, or an S(f) certificate with the
/// rank-drop polynomials that blocked extraction over the base field.
struct TorelliVerdict {
  TorelliStatus status = TorelliStatus::Unsupported;
  std::optional<STDecomposition> witness;
  bool needs_extension = false;
  std::vector<UPoly> deferred;
  std::string reason;  // set for UNSUPPORTED
  VerdictJustification justification;
};

/// Never throws on singular or out-of-range input; those give UNSUPPORTED.
TorelliVerdict torelli_verdict(const HomPoly& f, const ExtractionOptions& options = {});

/// indicator_dim = dim {c : sum_i c_i df/dx_i in K*g}. For smooth f this is 1
/// exactly when g lies in J(f)_{k-1}, which is when the sections over E = V(g)
/// jump.
struct JumpReport {
  HomPoly g;
  std::size_t indicator_dim = 0;
  bool jumped = false;
  std::optional<std::string> error;
};

/// Throws DimensionMismatch unless deg g = deg f - 1, PreconditionViolation
/// for g = 0, UnsupportedInput for singular f.
JumpReport jacobi_jump_indicator(const HomPoly& f, const HomPoly& g);

/// Reports in input order; a bad candidate records its error and is not jumped.
std::vector<JumpReport> jump_locus_filter(const HomPoly& f, const std::vector<HomPoly>& candidates);

/// The degree-k forms whose partials all lie in a given J inside A_{k-1}, and
/// a predicate for the members that are smooth with Jacobi piece exactly J.
class ReconstructionFamily {
 public:
  ReconstructionFamily(Subspace jacobi, Subspace space, std::size_t num_vars, unsigned degree);

  const Subspace& jacobi() const noexcept { return jacobi_; }
  const Subspace& space() const noexcept { return space_; }
  std::size_t dim() const noexcept { return space_.dim(); }
  std::size_t num_vars() const noexcept { return num_vars_; }
  unsigned degree() const noexcept { return degree_; }

  std::vector<HomPoly> basis() const;
  HomPoly member(std::span<const Scalar> coords) const;
  bool contains(const HomPoly& g) const;
  /// g is smooth and jacobi_piece(g) == J.
  bool realizes(const HomPoly& g) const;
  /// realizes() on each basis vector.
  std::vector<bool> basis_realizes() const;

 private:
  Subspace jacobi_;
  Subspace space_;
  std::size_t num_vars_;
  unsigned degree_;
};

ReconstructionFamily divisors_with_jacobi_piece(const Subspace& jacobi, std::size_t num_vars,
                                                unsigned k);

struct PencilInvariance {
  bool invariant = true;
  std::vector<HilbertFunction> tables;
};

/// Hilbert functions of D0(-log(mu f1 + nu f2)) across samples. f1 and f2 must
/// share degree and ring and use disjoint variables; every sample needs
/// mu != 0 and nu != 0 (PreconditionViolation otherwise).
PencilInvariance pencil_hilbert_invariance(const HomPoly& f1, const HomPoly& f2,
                                           const std::vector<std::pair<Scalar, Scalar>>& samples,
                                           unsigned d_max);

}  // namespace torelli
