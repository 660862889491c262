#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isorep/linalg.hpp"

namespace isorep {

/// Point of the lattice N^2.
struct Point2 {
  int m = 0;
  int n = 0;

  friend bool operator==(const Point2&, const Point2&) = default;
  Point2 operator+(const Point2& o) const { return {m + o.m, n + o.n}; }
  Point2 operator-(const Point2& o) const { return {m - o.m, n - o.n}; }
  Point2 operator*(int k) const { return {k * m, k * n}; }
};

/// Truncation of H (x) l^2(N) to C^n (x) C^L. Basis index of e_i (x) delta_j is i * L + j.
/// Levels L - guard .. L - 1 form the guard band; the rest is the interior.
struct TruncationParams {
  int n = 1;
  int L = 8;
  int guard = 2;

  /// Throws InputError unless n >= 1 and 1 <= guard < L.
  void validate() const;
  int interior_levels() const { return L - guard; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(n) * L; }
  bool in_guard(Eigen::Index index) const { return index % L >= L - guard; }

  friend bool operator==(const TruncationParams&, const TruncationParams&) = default;
};

/// L = 8 d, guard = 2 d.
TruncationParams default_truncation(int n, int family_size);

/// Mutually orthogonal projections P_1..P_d summing to 1, plus a unitary U, all on C^n.
struct ProjectionFamily {
  std::vector<ComplexMatrix> projections;
  ComplexMatrix unitary;

  Eigen::Index dim() const { return unitary.rows(); }
  int size() const { return static_cast<int>(projections.size()); }

  /// Q_k = 1 - (P_1 + ... + P_k).
  ComplexMatrix tail_projection(int k) const;

  /// Throws InputError naming the first violated invariant.
  void validate(const ToleranceConfig& tol = {}) const;

  /// P_i = e_i e_i^*, i = 1..n.
  static ProjectionFamily standard_basis(const ComplexMatrix& unitary);
};

/// Direct sum of two families of equal length.
ProjectionFamily direct_sum(const ProjectionFamily& a, const ProjectionFamily& b);

enum class FamilyKind { custom, projection, reflection, truncated_infinite };

std::string to_string(FamilyKind kind);

/// Reparametrization sigma~(1,0) = sigma(a), sigma~(0,1) = sigma(b).
struct Reparametrization {
  Point2 a;
  Point2 b;
};

/// How a representation was produced, so it can be rebuilt at another truncation.
struct RepSource {
  FamilyKind kind = FamilyKind::custom;
  std::optional<ProjectionFamily> family;
  std::optional<ComplexVector> a_vector;
  std::optional<Reparametrization> reparam;
  /// Guard of the representation before any reparametrization widened it.
  int base_guard = 0;
};

/// A pair of commuting isometries on the truncated space, exact after compression to
/// the interior.
struct IsoRep2 {
  ComplexMatrix w1;
  ComplexMatrix w2;
  TruncationParams trunc;
  ComplexMatrix interior_projector;
  RepSource source;
  std::vector<std::string> warnings;

  Eigen::Index dim() const { return w1.rows(); }
  /// sigma(m, n) = W1^m W2^n.
  ComplexMatrix power(Point2 p) const;
  const ComplexMatrix& generator(int i) const { return i == 0 ? w1 : w2; }
};

/// Truncated unilateral shift S e_j = e_{j+1}, S e_{L-1} = 0.
ComplexMatrix truncated_shift(int L);

/// Projection onto C^n (x) span{delta_0 .. delta_{L-guard-1}}.
ComplexMatrix interior_projector(const TruncationParams& trunc);

/// W1 = 1 (x) S, W2 = sum_i U P_i (x) S^(i-1).
/// Rejects invalid families, a family on the wrong space and d > L - guard.
IsoRep2 build_projection_family_rep(const ProjectionFamily& fam, const TruncationParams& trunc,
                                    const ToleranceConfig& tol = {});

/// U_a = 1 - 2 a a^* / |a|^2.
ComplexMatrix reflection_unitary(const ComplexVector& a);

/// Standard-basis projections with U = U_a. Warns (in rep.warnings) when some <a|e_i> = 0.
IsoRep2 build_reflection_rep(const ComplexVector& a, const TruncationParams& trunc,
                             const ToleranceConfig& tol = {});

/// The l^2 sequence a_k = 1/k, truncated to k = 1..n and normalized.
ComplexVector harmonic_sequence(int n);

/// Truncation used for truncated_infinite families (d = n): L = 2n + 2, guard = n.
/// The spec default L = 8d grows as n^2 in the system size, which is out of reach here.
TruncationParams truncated_infinite_truncation(int n);

/// Reflection family with a = harmonic_sequence(n), tagged truncated_infinite.
IsoRep2 build_truncated_infinite_rep(int n, const TruncationParams& trunc, const ToleranceConfig& tol = {});
IsoRep2 build_truncated_infinite_rep(int n, const ToleranceConfig& tol = {});

/// Wraps explicit generators. Shapes must be n L x n L.
IsoRep2 make_custom_rep(ComplexMatrix w1, ComplexMatrix w2, const TruncationParams& trunc);

/// Block-diagonal sum of two reps with identical L and guard; n adds up.
IsoRep2 direct_sum(const IsoRep2& a, const IsoRep2& b, const ToleranceConfig& tol = {});

/// Rebuilds the same representation with L replaced by `new_L` (guard kept).
/// Returns nullopt for custom representations.
std::optional<IsoRep2> with_level(const IsoRep2& rep, int new_L, const ToleranceConfig& tol = {});

/// Rebuilds a truncated_infinite representation at a larger n (with its own truncation).
std::optional<IsoRep2> with_family_size(const IsoRep2& rep, int new_n, const ToleranceConfig& tol = {});

struct ValidationReport {
  double isometry_w1 = 0.0;
  double isometry_w2 = 0.0;
  double commutation = 0.0;
  bool isometry_ok = false;
  bool commutation_ok = false;

  bool passed() const { return isometry_ok && commutation_ok; }
};

/// Interior deviations of W_i^* W_i - 1 and W1 W2 - W2 W1.
ValidationReport validate(const IsoRep2& rep, const ToleranceConfig& tol = {});

enum class Purity { strongly_pure, not_pure, inconclusive };

std::string to_string(Purity p);

struct PurityReport {
  Purity verdict = Purity::inconclusive;
  /// rank of (interior projection) * Ran(W_i^k), k = 0..depth, per generator.
  std::vector<std::vector<Eigen::Index>> ranks;
  std::vector<Eigen::Index> multiplicity;
  std::vector<Purity> per_generator;
};

/// Three-valued purity test from the ranks r_k of the interior compressions of Ran(W_i^k).
///
/// A pure generator behaves like a shift of multiplicity m = r_0 - r_1: r_k =
/// max(0, r_0 - k m). The generator is classified not_pure if m = 0 or the rank stays at
/// a positive value for two consecutive depths, strongly pure if the linear law holds up
/// to `depth`, inconclusive otherwise. Rejects depth outside [1, L - guard].
PurityReport strong_purity_check(const IsoRep2& rep, int depth, const ToleranceConfig& tol = {});

/// Generators W^a, W^b with the guard widened by max(|a|, |b|) (|.| = coordinate sum).
/// Rejects a or b = (0, 0) and pairs with det[a; b] != +-1 unless allow_non_spanning.
IsoRep2 reparametrize(const IsoRep2& rep, Point2 a, Point2 b, bool allow_non_spanning = false);

}  // namespace isorep
