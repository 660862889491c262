#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isorep/linalg.hpp"
#include "isorep/rep_model.hpp"

namespace isorep {

/// Basis of C*({U, P_i})' on C^n.
std::vector<ComplexMatrix> structured_commutant_basis(const ProjectionFamily& fam, const ToleranceConfig& tol = {});

/// dim C*({U, P_i})'. The commutant of the representation is this algebra tensored with 1.
std::size_t structured_commutant_dim(const ProjectionFamily& fam, const ToleranceConfig& tol = {});

struct CommutantOracle {
  /// Dimension of {T : T W_i = W_i T, T W_i^* = W_i^* T} on the truncated space.
  std::size_t raw_dim = 0;
  /// Elements whose interior compression still commutes with the compressed generators.
  std::size_t dim = 0;
  double worst_interior_residual = 0.0;
  std::vector<ComplexMatrix> basis;
};

/// Commutant of {G_k, G_k^*} followed by the interior filter: an element T survives when
/// P T P commutes with every P G_k P and (P G_k P)^* to identity_tol.
CommutantOracle interior_commutant(std::span<const ComplexMatrix> gens, const ComplexMatrix& projector,
                                   const ToleranceConfig& tol = {}, std::uint64_t seed = 0x5eed);

/// Commutant of the truncated generators and their adjoints, computed without using the
/// family structure, followed by the interior filter. At a fixed L this is a heuristic
/// upper bound; it is certified only by agreement with structured_commutant_dim.
CommutantOracle truncated_commutant(const IsoRep2& rep, const ToleranceConfig& tol = {},
                                    std::uint64_t seed = 0x5eed);

std::size_t truncated_commutant_oracle(const IsoRep2& rep, const ToleranceConfig& tol = {},
                                       std::uint64_t seed = 0x5eed);

/// Structured path: commutant dimension of the family is 1.
bool is_irreducible(const ProjectionFamily& fam, const ToleranceConfig& tol = {});

/// Generic path: oracle dimension is 1 at L and, when the rep can be rebuilt, at
/// L + stabilization_delta. nullopt (inconclusive) when the two disagree.
std::optional<bool> is_irreducible(const IsoRep2& rep, const ToleranceConfig& tol = {},
                                   std::uint64_t seed = 0x5eed);

enum class EquivalenceStatus { equivalent, inequivalent, inconclusive };

std::string to_string(EquivalenceStatus s);

struct EquivalenceVerdict {
  EquivalenceStatus status = EquivalenceStatus::inconclusive;
  /// Unitary T with T sigma_A(g) = sigma_B(g) T, on C^n (structured) or on the
  /// truncated space (generic).
  std::optional<ComplexMatrix> witness;
  std::size_t intertwiner_dim = 0;
  double unitarity_residual = 0.0;
  double intertwining_residual = 0.0;
  double condition = 0.0;
  std::uint64_t seed = 0;
  std::string path;
};

/// Condition-number threshold for accepting a normalized intertwiner as unitary.
inline constexpr double kUnitaryConditionTol = 1e-6;

/// Structured test on C^n: intertwiners T_0 U_A = U_B T_0, T_0 P_i = P_i T_0.
/// One-dimensional spaces are decided by the condition number of their element; larger
/// spaces are sampled with 32 seeded random combinations.
EquivalenceVerdict are_unitarily_equivalent(const ProjectionFamily& a, const ProjectionFamily& b,
                                            const ToleranceConfig& tol = {}, std::uint64_t seed = 0x5eed);

/// Generic test on the truncated spaces (same dimension required).
EquivalenceVerdict are_unitarily_equivalent(const IsoRep2& a, const IsoRep2& b, const ToleranceConfig& tol = {},
                                            std::uint64_t seed = 0x5eed);

}  // namespace isorep
