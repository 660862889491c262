#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isorep/linalg.hpp"
#include "isorep/rep_model.hpp"

namespace isorep {

/// An additive cocycle of a two-parameter representation, determined by its values on the
/// generators: eta10 in ker W1^*, eta01 in ker W2^*, eta10 + W1 eta01 = eta01 + W2 eta10.
struct Cocycle2 {
  ComplexVector eta10;
  ComplexVector eta01;

  /// (eta10; eta01) as one vector of length 2 n L.
  ComplexVector stacked() const;
};

struct CocycleResiduals {
  double kernel_w1 = 0.0;
  double kernel_w2 = 0.0;
  double compatibility = 0.0;

  double max() const;
};

/// Residuals of the three defining relations for one pair.
CocycleResiduals cocycle_residuals(const Cocycle2& c, const IsoRep2& rep);

/// Basis of the additive cocycle space of a representation.
struct CocycleSpace {
  std::vector<Cocycle2> basis;
  /// False when solutions reaching into the guard band had to be dropped.
  bool stable = true;
  /// Dimension before dropping guard-band solutions.
  std::size_t unfiltered_dim = 0;
  CocycleResiduals residuals;

  std::size_t dim() const { return basis.size(); }
};

/// Solves the kernel and compatibility relations over (eta10, eta01) on the truncated
/// space. Solutions with weight in the guard band are removed (the basis spans those with
/// none) and `stable` records whether any had to be.
CocycleSpace cocycle_space(const IsoRep2& rep, const ToleranceConfig& tol = {});

enum class IndexKind { finite, unbounded_with_truncation, unstable };

std::string to_string(IndexKind kind);

struct IndexResult {
  IndexKind kind = IndexKind::unstable;
  /// Cocycle dimension of the representation as given.
  std::size_t value = 0;
  /// Dimension at L + stabilization_delta (or 0 when the rep cannot be rebuilt).
  std::size_t value_extended_level = 0;
  /// For truncated_infinite families: dimension at n + stabilization_delta.
  std::size_t value_extended_family = 0;
  bool stable = false;
};

/// Index from the cocycle space at L and at L + stabilization_delta. A truncated_infinite
/// family reports unbounded_with_truncation when its (stable) dimension also grows from n
/// to n + stabilization_delta. Custom reps cannot be rebuilt and rely on the guard filter
/// alone.
IndexResult index(const IsoRep2& rep, const ToleranceConfig& tol = {});

/// dim ker(U - 1) for a finite family.
std::size_t index_formula_projection_family(const ProjectionFamily& fam, const ToleranceConfig& tol = {});

/// The cocycle built from x in ker(U - 1): eta10 = x (x) delta_0,
/// eta01 = sum_j U Q_{j+1} x (x) delta_j.
Cocycle2 cocycle_from_fixed_vector(const ProjectionFamily& fam, const ComplexVector& x, const TruncationParams& trunc);

/// eta at (m, n) via eta_{x + e_i} = eta_{e_i} + sigma(e_i) eta_x, along the path that
/// first raises m and along the one that first raises n. Throws InconsistencyError when
/// the two differ by more than identity_tol (the pair is then not a cocycle).
ComplexVector evaluate(const Cocycle2& c, const IsoRep2& rep, Point2 point, const ToleranceConfig& tol = {});

/// eta along an explicit monotone path given as a string of '1' / '2' steps.
ComplexVector evaluate_along(const Cocycle2& c, const IsoRep2& rep, std::string_view path);

/// Restriction to the semigroup generated by a, b: the pair (eta_a, eta_b), which is a
/// cocycle of reparametrize(rep, a, b).
Cocycle2 restrict_cocycle(const Cocycle2& c, const IsoRep2& rep, Point2 a, Point2 b,
                          const ToleranceConfig& tol = {});

/// Inverse of restrict_cocycle. For each standard generator g, finds x, y in the semigroup
/// generated by a, b with g = x - y (breadth first, coefficients up to 16) and sets
/// xi_g = eta_x - sigma(g) eta_y. The value is recomputed from a second decomposition
/// (x + a, y + a) and must agree. Throws InconsistencyError if no decomposition exists or
/// the result is not a cocycle of `rep`.
Cocycle2 extend_cocycle(const IsoRep2& rep, Point2 a, Point2 b, const Cocycle2& eta_on_q,
                        const ToleranceConfig& tol = {});

/// One-parameter cocycle space dimension of a single isometry: dim ker(sigma^*).
std::size_t cocycle_dim_1d(const ComplexMatrix& sigma, const ToleranceConfig& tol = {});

}  // namespace isorep
