#include "isorep/commutant.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <random>

#include "isorep/errors.hpp"
#include "isorep/kernels.hpp"

namespace isorep {

std::vector<ComplexMatrix> structured_commutant_basis(const ProjectionFamily& fam, const ToleranceConfig& tol) {
  fam.validate(tol);
  std::vector<IntertwinerPair> pairs;
  pairs.push_back({fam.unitary, fam.unitary});
  for (const auto& p : fam.projections) pairs.push_back({p, p});
  return intertwiner_space(pairs, tol);
}

std::size_t structured_commutant_dim(const ProjectionFamily& fam, const ToleranceConfig& tol) {
  return structured_commutant_basis(fam, tol).size();
}

CommutantOracle interior_commutant(std::span<const ComplexMatrix> gens, const ComplexMatrix& projector,
                                   const ToleranceConfig& tol, std::uint64_t seed) {
  CommutantOracle out;
  const auto raw = star_commutant(gens, tol, seed);
  out.raw_dim = raw.size();

  const ComplexMatrix& p = projector;
  std::vector<ComplexMatrix> compressed;
  for (const auto& g : gens) {
    compressed.push_back(p * g * p);
    compressed.push_back(compressed.back().adjoint());
  }
  for (const auto& t : raw) {
    const ComplexMatrix tc = p * t * p;
    double worst = 0.0;
    for (const auto& w : compressed) worst = std::max(worst, kernels::parallel::intertwining_residual(w, tc, w));
    out.worst_interior_residual = std::max(out.worst_interior_residual, worst);
    if (worst <= tol.identity_tol) out.basis.push_back(t);
  }
  out.dim = out.basis.size();
  return out;
}

CommutantOracle truncated_commutant(const IsoRep2& rep, const ToleranceConfig& tol, std::uint64_t seed) {
  const std::array<ComplexMatrix, 2> gens{rep.w1, rep.w2};
  return interior_commutant(gens, rep.interior_projector, tol, seed);
}

std::size_t truncated_commutant_oracle(const IsoRep2& rep, const ToleranceConfig& tol, std::uint64_t seed) {
  return truncated_commutant(rep, tol, seed).dim;
}

bool is_irreducible(const ProjectionFamily& fam, const ToleranceConfig& tol) {
  return structured_commutant_dim(fam, tol) == 1;
}

std::optional<bool> is_irreducible(const IsoRep2& rep, const ToleranceConfig& tol, std::uint64_t seed) {
  const std::size_t here = truncated_commutant_oracle(rep, tol, seed);
  if (auto wider = with_level(rep, rep.trunc.L + tol.stabilization_delta, tol)) {
    if (truncated_commutant_oracle(*wider, tol, seed) != here) return std::nullopt;
  }
  return here == 1;
}

std::string to_string(EquivalenceStatus s) {
  switch (s) {
    case EquivalenceStatus::equivalent: return "equivalent";
    case EquivalenceStatus::inequivalent: return "inequivalent";
    case EquivalenceStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// Scale to unit spectral norm and rotate the global phase so the trace (or, failing
// that, the largest entry) is real and positive.
ComplexMatrix normalize_witness(const ComplexMatrix& t) {
  ComplexMatrix w = t / spectral_norm(t);
  Complex ref = w.trace();
  if (std::abs(ref) < 1e-8) {
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    w.cwiseAbs().maxCoeff(&i, &j);
    ref = w(i, j);
  }
  if (std::abs(ref) > 0.0) w *= std::conj(ref) / std::abs(ref);
  return w;
}

struct Candidate {
  std::optional<ComplexMatrix> unitary;
  double condition = 0.0;
};

// Searches span(basis) for a multiple of a unitary.
Candidate find_unitary(const std::vector<ComplexMatrix>& basis, std::uint64_t seed) {
  Candidate c;
  if (basis.size() == 1) {
    c.condition = condition_number(basis.front());
    if (c.condition <= 1.0 + kUnitaryConditionTol) c.unitary = normalize_witness(basis.front());
    return c;
  }
  c.condition = std::numeric_limits<double>::infinity();
  for (int sample = 0; sample < 32; ++sample) {
    const ComplexMatrix z =
        random_gaussian(static_cast<Eigen::Index>(basis.size()), 1, seed + static_cast<std::uint64_t>(sample));
    ComplexMatrix t = ComplexMatrix::Zero(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) t += z(static_cast<Eigen::Index>(k), 0) * basis[k];
    const double cond = condition_number(t);
    c.condition = std::min(c.condition, cond);
    if (cond <= 1.0 + kUnitaryConditionTol) {
      c.unitary = normalize_witness(t);
      return c;
    }
  }
  return c;
}

EquivalenceVerdict decide(const std::vector<ComplexMatrix>& space, std::uint64_t seed, bool square) {
  EquivalenceVerdict v;
  v.seed = seed;
  v.intertwiner_dim = space.size();
  if (space.empty() || !square) {
    v.status = EquivalenceStatus::inequivalent;
    return v;
  }
  const Candidate c = find_unitary(space, seed);
  v.condition = c.condition;
  if (c.unitary) {
    v.status = EquivalenceStatus::equivalent;
    v.witness = c.unitary;
  } else if (space.size() == 1) {
    // Every intertwiner is a multiple of this one, and none of them is unitary.
    v.status = EquivalenceStatus::inequivalent;
  } else {
    v.status = EquivalenceStatus::inconclusive;
  }
  return v;
}

}  // namespace

EquivalenceVerdict are_unitarily_equivalent(const ProjectionFamily& a, const ProjectionFamily& b,
                                            const ToleranceConfig& tol, std::uint64_t seed) {
  a.validate(tol);
  b.validate(tol);
  if (a.dim() != b.dim() || a.size() != b.size()) {
    throw DimensionMismatch("are_unitarily_equivalent: families must act on the same C^n with the same d");
  }
  // T_0 U_A = U_B T_0 and T_0 P_i = P_i T_0, written as lhs T = T rhs.
  std::vector<IntertwinerPair> pairs;
  pairs.push_back({b.unitary, a.unitary});
  for (int i = 0; i < a.size(); ++i) {
    pairs.push_back({b.projections[static_cast<std::size_t>(i)], a.projections[static_cast<std::size_t>(i)]});
  }
  EquivalenceVerdict v = decide(intertwiner_space(pairs, tol), seed, true);
  v.path = "structured";
  if (v.witness) {
    const ComplexMatrix& t = *v.witness;
    const Eigen::Index n = t.rows();
    v.unitarity_residual = max_abs(t.adjoint() * t - ComplexMatrix::Identity(n, n));
    for (const auto& pr : pairs) {
      v.intertwining_residual = std::max(v.intertwining_residual, kernels::parallel::intertwining_residual(pr.lhs, t, pr.rhs));
    }
    // The lift T_0 (x) 1 must intertwine both generators of the representations.
    const int d = a.size();
    const TruncationParams trunc{static_cast<int>(n), d + 2, 2};
    const IsoRep2 ra = build_projection_family_rep(a, trunc, tol);
    const IsoRep2 rb = build_projection_family_rep(b, trunc, tol);
    const ComplexMatrix lift = kron(t, ComplexMatrix::Identity(trunc.L, trunc.L));
    for (int g = 0; g < 2; ++g) {
      v.intertwining_residual =
          std::max(v.intertwining_residual, kernels::parallel::intertwining_residual(rb.generator(g), lift, ra.generator(g)));
    }
    if (v.unitarity_residual > tol.identity_tol || v.intertwining_residual > tol.identity_tol) {
      v.status = EquivalenceStatus::inconclusive;
    }
  }
  return v;
}

EquivalenceVerdict are_unitarily_equivalent(const IsoRep2& a, const IsoRep2& b, const ToleranceConfig& tol,
                                            std::uint64_t seed) {
  if (a.dim() != b.dim()) throw DimensionMismatch("are_unitarily_equivalent: representations differ in dimension");
  const std::array<ComplexMatrix, 2> gens_b{b.w1, b.w2};
  const std::array<ComplexMatrix, 2> gens_a{a.w1, a.w2};
  EquivalenceVerdict v = decide(star_intertwiner_space(gens_b, gens_a, tol, seed), seed, true);
  v.path = "generic";
  if (v.witness) {
    const ComplexMatrix& t = *v.witness;
    v.unitarity_residual = max_abs(t.adjoint() * t - ComplexMatrix::Identity(t.rows(), t.cols()));
    for (int g = 0; g < 2; ++g) {
      v.intertwining_residual =
          std::max(v.intertwining_residual, kernels::parallel::intertwining_residual(b.generator(g), t, a.generator(g)));
    }
    if (v.unitarity_residual > tol.identity_tol || v.intertwining_residual > tol.identity_tol) {
      v.status = EquivalenceStatus::inconclusive;
    }
  }
  return v;
}

}  // namespace isorep
