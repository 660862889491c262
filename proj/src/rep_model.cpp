#include "isorep/rep_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "isorep/errors.hpp"

namespace isorep {

void TruncationParams::validate() const {
  if (n < 1) throw InputError("must be >= 1", "trunc.n");
  if (L < 2) throw InputError("must be >= 2", "trunc.L");
  if (guard < 1 || guard >= L) throw InputError("must satisfy 1 <= guard < L", "trunc.guard");
}

TruncationParams default_truncation(int n, int family_size) {
  return {n, 8 * family_size, 2 * family_size};
}

TruncationParams truncated_infinite_truncation(int n) { return {n, 2 * n + 2, n}; }

ComplexMatrix ProjectionFamily::tail_projection(int k) const {
  ComplexMatrix q = ComplexMatrix::Identity(dim(), dim());
  for (int i = 0; i < std::min(k, size()); ++i) q -= projections[static_cast<std::size_t>(i)];
  return q;
}

void ProjectionFamily::validate(const ToleranceConfig& tol) const {
  const Eigen::Index n = unitary.rows();
  if (n < 1 || unitary.cols() != n) throw InputError("must be a nonempty square matrix", "unitary");
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if (max_abs(unitary.adjoint() * unitary - id) > tol.identity_tol ||
      max_abs(unitary * unitary.adjoint() - id) > tol.identity_tol) {
    throw InputError("is not unitary", "unitary");
  }
  if (projections.empty()) throw InputError("family is empty", "projections");
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < projections.size(); ++i) {
    const std::string path = "projections[" + std::to_string(i) + "]";
    const auto& p = projections[i];
    if (p.rows() != n || p.cols() != n) throw InputError("shape differs from the unitary", path);
    if (max_abs(p * p - p) > tol.identity_tol || max_abs(p - p.adjoint()) > tol.identity_tol) {
      throw InputError("is not an orthogonal projection", path);
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (max_abs(p * projections[j]) > tol.identity_tol) {
        throw InputError("is not orthogonal to projections[" + std::to_string(j) + "]", path);
      }
    }
    total += p;
  }
  if (max_abs(total - id) > tol.identity_tol) throw InputError("do not sum to the identity", "projections");
}

ProjectionFamily ProjectionFamily::standard_basis(const ComplexMatrix& unitary) {
  ProjectionFamily fam;
  fam.unitary = unitary;
  const Eigen::Index n = unitary.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    p(i, i) = 1.0;
    fam.projections.push_back(std::move(p));
  }
  return fam;
}

namespace {

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, int k) {
  ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

ProjectionFamily direct_sum(const ProjectionFamily& a, const ProjectionFamily& b) {
  ProjectionFamily out;
  out.unitary = block_diag(a.unitary, b.unitary);
  const int d = std::max(a.size(), b.size());
  for (int i = 0; i < d; ++i) {
    const ComplexMatrix pa = i < a.size() ? a.projections[static_cast<std::size_t>(i)]
                                          : ComplexMatrix::Zero(a.dim(), a.dim());
    const ComplexMatrix pb = i < b.size() ? b.projections[static_cast<std::size_t>(i)]
                                          : ComplexMatrix::Zero(b.dim(), b.dim());
    out.projections.push_back(block_diag(pa, pb));
  }
  return out;
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::custom: return "custom";
    case FamilyKind::projection: return "projection";
    case FamilyKind::reflection: return "reflection";
    case FamilyKind::truncated_infinite: return "truncated_infinite";
  }
  return "unknown";
}

std::string to_string(Purity p) {
  switch (p) {
    case Purity::strongly_pure: return "strongly_pure";
    case Purity::not_pure: return "not_pure";
    case Purity::inconclusive: return "inconclusive";
  }
  return "unknown";
}

ComplexMatrix IsoRep2::power(Point2 p) const {
  if (p.m < 0 || p.n < 0) throw InputError("lattice point must lie in N^2");
  return matrix_power(w1, p.m) * matrix_power(w2, p.n);
}

ComplexMatrix truncated_shift(int L) {
  ComplexMatrix s = ComplexMatrix::Zero(L, L);
  for (int j = 0; j + 1 < L; ++j) s(j + 1, j) = 1.0;
  return s;
}

ComplexMatrix interior_projector(const TruncationParams& trunc) {
  const Eigen::Index dim = trunc.dim();
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (!trunc.in_guard(k)) p(k, k) = 1.0;
  }
  return p;
}

IsoRep2 build_projection_family_rep(const ProjectionFamily& fam, const TruncationParams& trunc,
                                    const ToleranceConfig& tol) {
  trunc.validate();
  fam.validate(tol);
  if (fam.dim() != trunc.n) {
    throw InputError("family acts on C^" + std::to_string(fam.dim()) + " but n = " + std::to_string(trunc.n),
                     "trunc.n");
  }
  if (fam.size() > trunc.interior_levels()) {
    throw InputError("family size d = " + std::to_string(fam.size()) + " exceeds L - guard = " +
                         std::to_string(trunc.interior_levels()),
                     "trunc");
  }
  const ComplexMatrix s = truncated_shift(trunc.L);
  IsoRep2 rep;
  rep.trunc = trunc;
  rep.w1 = kron(ComplexMatrix::Identity(trunc.n, trunc.n), s);
  rep.w2 = ComplexMatrix::Zero(trunc.dim(), trunc.dim());
  ComplexMatrix s_pow = ComplexMatrix::Identity(trunc.L, trunc.L);
  for (const auto& p : fam.projections) {
    rep.w2 += kron(fam.unitary * p, s_pow);
    s_pow = s * s_pow;
  }
  rep.interior_projector = interior_projector(trunc);
  rep.source.kind = FamilyKind::projection;
  rep.source.family = fam;
  rep.source.base_guard = trunc.guard;
  return rep;
}

ComplexMatrix reflection_unitary(const ComplexVector& a) {
  const double norm2 = a.squaredNorm();
  if (norm2 == 0.0) throw InputError("must be nonzero", "a_vector");
  const Eigen::Index n = a.size();
  return ComplexMatrix::Identity(n, n) - (2.0 / norm2) * (a * a.adjoint());
}

IsoRep2 build_reflection_rep(const ComplexVector& a, const TruncationParams& trunc, const ToleranceConfig& tol) {
  const ComplexMatrix u = reflection_unitary(a);
  IsoRep2 rep = build_projection_family_rep(ProjectionFamily::standard_basis(u), trunc, tol);
  rep.source.kind = FamilyKind::reflection;
  rep.source.a_vector = a;
  const double scale = a.norm();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i)) <= tol.identity_tol * scale) {
      rep.warnings.push_back("<a|e_" + std::to_string(i + 1) +
                             "> = 0: the family commutant may be larger than the scalars");
    }
  }
  return rep;
}

ComplexVector harmonic_sequence(int n) {
  if (n < 1) throw InputError("must be >= 1", "n");
  ComplexVector a(n);
  for (int k = 0; k < n; ++k) a(k) = 1.0 / (k + 1);
  return a / a.norm();
}

IsoRep2 build_truncated_infinite_rep(int n, const TruncationParams& trunc, const ToleranceConfig& tol) {
  IsoRep2 rep = build_reflection_rep(harmonic_sequence(n), trunc, tol);
  rep.source.kind = FamilyKind::truncated_infinite;
  return rep;
}

IsoRep2 build_truncated_infinite_rep(int n, const ToleranceConfig& tol) {
  return build_truncated_infinite_rep(n, truncated_infinite_truncation(n), tol);
}

IsoRep2 make_custom_rep(ComplexMatrix w1, ComplexMatrix w2, const TruncationParams& trunc) {
  trunc.validate();
  const Eigen::Index dim = trunc.dim();
  if (w1.rows() != dim || w1.cols() != dim) throw DimensionMismatch("w1 must be n L x n L");
  if (w2.rows() != dim || w2.cols() != dim) throw DimensionMismatch("w2 must be n L x n L");
  IsoRep2 rep;
  rep.w1 = std::move(w1);
  rep.w2 = std::move(w2);
  rep.trunc = trunc;
  rep.interior_projector = interior_projector(trunc);
  rep.source.base_guard = trunc.guard;
  return rep;
}

IsoRep2 direct_sum(const IsoRep2& a, const IsoRep2& b, const ToleranceConfig& tol) {
  if (a.trunc.L != b.trunc.L || a.trunc.guard != b.trunc.guard) {
    throw DimensionMismatch("direct_sum: truncation levels and guards must agree");
  }
  const TruncationParams trunc{a.trunc.n + b.trunc.n, a.trunc.L, a.trunc.guard};
  if (a.source.family && b.source.family && !a.source.reparam && !b.source.reparam) {
    return build_projection_family_rep(direct_sum(*a.source.family, *b.source.family), trunc, tol);
  }
  return make_custom_rep(block_diag(a.w1, b.w1), block_diag(a.w2, b.w2), trunc);
}

std::optional<IsoRep2> with_level(const IsoRep2& rep, int new_L, const ToleranceConfig& tol) {
  if (rep.source.kind == FamilyKind::custom || !rep.source.family) return std::nullopt;
  const TruncationParams trunc{rep.trunc.n, new_L, rep.source.base_guard};
  IsoRep2 base;
  switch (rep.source.kind) {
    case FamilyKind::projection:
      base = build_projection_family_rep(*rep.source.family, trunc, tol);
      break;
    case FamilyKind::reflection:
      base = build_reflection_rep(*rep.source.a_vector, trunc, tol);
      break;
    case FamilyKind::truncated_infinite:
      base = build_truncated_infinite_rep(rep.trunc.n, trunc, tol);
      break;
    case FamilyKind::custom:
      return std::nullopt;
  }
  if (rep.source.reparam) return reparametrize(base, rep.source.reparam->a, rep.source.reparam->b, true);
  return base;
}

std::optional<IsoRep2> with_family_size(const IsoRep2& rep, int new_n, const ToleranceConfig& tol) {
  if (rep.source.kind != FamilyKind::truncated_infinite) return std::nullopt;
  IsoRep2 base = build_truncated_infinite_rep(new_n, truncated_infinite_truncation(new_n), tol);
  if (rep.source.reparam) return reparametrize(base, rep.source.reparam->a, rep.source.reparam->b, true);
  return base;
}

ValidationReport validate(const IsoRep2& rep, const ToleranceConfig& tol) {
  const ComplexMatrix& p = rep.interior_projector;
  const ComplexMatrix id = ComplexMatrix::Identity(rep.dim(), rep.dim());
  ValidationReport r;
  r.isometry_w1 = max_abs(p * (rep.w1.adjoint() * rep.w1 - id) * p);
  r.isometry_w2 = max_abs(p * (rep.w2.adjoint() * rep.w2 - id) * p);
  r.commutation = max_abs(p * (rep.w1 * rep.w2 - rep.w2 * rep.w1) * p);
  r.isometry_ok = r.isometry_w1 <= tol.identity_tol && r.isometry_w2 <= tol.identity_tol;
  r.commutation_ok = r.commutation <= tol.identity_tol;
  return r;
}

PurityReport strong_purity_check(const IsoRep2& rep, int depth, const ToleranceConfig& tol) {
  if (depth < 1 || depth > rep.trunc.interior_levels()) {
    throw InputError("depth must lie in [1, L - guard = " + std::to_string(rep.trunc.interior_levels()) + "]",
                     "depth");
  }
  std::vector<Eigen::Index> interior_rows;
  for (Eigen::Index k = 0; k < rep.dim(); ++k) {
    if (!rep.trunc.in_guard(k)) interior_rows.push_back(k);
  }
  const auto compress = [&](const ComplexMatrix& m) {
    ComplexMatrix out(static_cast<Eigen::Index>(interior_rows.size()), m.cols());
    for (std::size_t i = 0; i < interior_rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(interior_rows[i]);
    return out;
  };

  PurityReport report;
  for (int g = 0; g < 2; ++g) {
    const ComplexMatrix& w = rep.generator(g);
    std::vector<Eigen::Index> ranks;
    ComplexMatrix wk = ComplexMatrix::Identity(rep.dim(), rep.dim());
    for (int k = 0; k <= depth; ++k) {
      ranks.push_back(numerical_rank(compress(wk), tol));
      wk = w * wk;
    }
    const Eigen::Index r0 = ranks[0];
    const Eigen::Index mult = r0 - ranks[1];
    Purity verdict = Purity::strongly_pure;
    if (mult == 0) {
      verdict = Purity::not_pure;
    } else {
      for (int k = 1; k <= depth; ++k) {
        if (ranks[k] == ranks[k - 1] && ranks[k] > 0) {
          verdict = Purity::not_pure;
          break;
        }
        if (ranks[k] != std::max<Eigen::Index>(0, r0 - k * mult)) verdict = Purity::inconclusive;
      }
    }
    report.ranks.push_back(std::move(ranks));
    report.multiplicity.push_back(mult);
    report.per_generator.push_back(verdict);
  }
  const auto& pg = report.per_generator;
  if (pg[0] == Purity::not_pure || pg[1] == Purity::not_pure) {
    report.verdict = Purity::not_pure;
  } else if (pg[0] == Purity::strongly_pure && pg[1] == Purity::strongly_pure) {
    report.verdict = Purity::strongly_pure;
  } else {
    report.verdict = Purity::inconclusive;
  }
  return report;
}

IsoRep2 reparametrize(const IsoRep2& rep, Point2 a, Point2 b, bool allow_non_spanning) {
  if (a == Point2{} || b == Point2{}) throw InputError("a and b must be nonzero", "reparametrize");
  if (a.m < 0 || a.n < 0 || b.m < 0 || b.n < 0) throw InputError("a and b must lie in N^2", "reparametrize");
  const int det = a.m * b.n - a.n * b.m;
  if (!allow_non_spanning && std::abs(det) != 1) {
    throw InputError("det[a; b] = " + std::to_string(det) + ": the semigroup generated by a, b does not span Z^2",
                     "reparametrize");
  }
  TruncationParams trunc = rep.trunc;
  trunc.guard += std::max(a.m + a.n, b.m + b.n);
  if (trunc.guard >= trunc.L) {
    throw InputError("widened guard " + std::to_string(trunc.guard) + " leaves no interior at L = " +
                         std::to_string(trunc.L),
                     "reparametrize");
  }
  IsoRep2 out;
  out.w1 = rep.power(a);
  out.w2 = rep.power(b);
  out.trunc = trunc;
  out.interior_projector = interior_projector(trunc);
  out.source = rep.source;
  out.warnings = rep.warnings;
  if (rep.source.reparam) {
    // Compose with an earlier reparametrization: express a, b in the original generators.
    const auto& r = *rep.source.reparam;
    out.source.reparam = Reparametrization{r.a * a.m + r.b * a.n, r.a * b.m + r.b * b.n};
  } else {
    out.source.reparam = Reparametrization{a, b};
  }
  return out;
}

}  // namespace isorep
