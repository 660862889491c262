#include "isorep/cocycle.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "isorep/errors.hpp"

namespace isorep {

ComplexVector Cocycle2::stacked() const {
  ComplexVector out(eta10.size() + eta01.size());
  out << eta10, eta01;
  return out;
}

double CocycleResiduals::max() const { return std::max({kernel_w1, kernel_w2, compatibility}); }

CocycleResiduals cocycle_residuals(const Cocycle2& c, const IsoRep2& rep) {
  if (c.eta10.size() != rep.dim() || c.eta01.size() != rep.dim()) {
    throw DimensionMismatch("cocycle vectors do not match the representation dimension");
  }
  CocycleResiduals r;
  r.kernel_w1 = max_abs(rep.w1.adjoint() * c.eta10);
  r.kernel_w2 = max_abs(rep.w2.adjoint() * c.eta01);
  r.compatibility = max_abs(c.eta10 + rep.w1 * c.eta01 - c.eta01 - rep.w2 * c.eta10);
  return r;
}

std::string to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::finite: return "finite";
    case IndexKind::unbounded_with_truncation: return "unbounded_with_truncation";
    case IndexKind::unstable: return "unstable";
  }
  return "unknown";
}

CocycleSpace cocycle_space(const IsoRep2& rep, const ToleranceConfig& tol) {
  const Eigen::Index n = rep.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  // Unknown z = (eta10; eta01). The kernel conditions act on one half each, so they are
  // eliminated per half; compatibility is then solved on the coefficients.
  const ComplexMatrix w1a = rep.w1.adjoint();
  const ComplexMatrix w2a = rep.w2.adjoint();
  const ComplexMatrix k1 = nullspace_with_cutoff(w1a, tol.rank_tol * spectral_norm_estimate(w1a));
  const ComplexMatrix k2 = nullspace_with_cutoff(w2a, tol.rank_tol * spectral_norm_estimate(w2a));
  ComplexMatrix compat(n, 2 * n);
  compat << id - rep.w2, rep.w1 - id;
  ComplexMatrix reduced(n, k1.cols() + k2.cols());
  reduced << (id - rep.w2) * k1, (rep.w1 - id) * k2;
  const ComplexMatrix coeffs = nullspace_with_cutoff(reduced, tol.rank_tol * spectral_norm_estimate(compat));
  ComplexMatrix solutions(2 * n, coeffs.cols());
  solutions.topRows(n) = k1 * coeffs.topRows(k1.cols());
  solutions.bottomRows(n) = k2 * coeffs.bottomRows(k2.cols());

  // Guard-band components of both halves must vanish.
  std::vector<Eigen::Index> guard_rows;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (rep.trunc.in_guard(k)) {
      guard_rows.push_back(k);
      guard_rows.push_back(n + k);
    }
  }
  ComplexMatrix guard_part(static_cast<Eigen::Index>(guard_rows.size()), solutions.cols());
  for (std::size_t i = 0; i < guard_rows.size(); ++i) {
    guard_part.row(static_cast<Eigen::Index>(i)) = solutions.row(guard_rows[i]);
  }
  const ComplexMatrix kept = solutions * nullspace_with_cutoff(guard_part, tol.rank_tol);

  CocycleSpace space;
  space.unfiltered_dim = static_cast<std::size_t>(solutions.cols());
  space.stable = kept.cols() == solutions.cols();
  for (Eigen::Index k = 0; k < kept.cols(); ++k) {
    Cocycle2 c{kept.col(k).head(n), kept.col(k).tail(n)};
    const CocycleResiduals r = cocycle_residuals(c, rep);
    space.residuals.kernel_w1 = std::max(space.residuals.kernel_w1, r.kernel_w1);
    space.residuals.kernel_w2 = std::max(space.residuals.kernel_w2, r.kernel_w2);
    space.residuals.compatibility = std::max(space.residuals.compatibility, r.compatibility);
    space.basis.push_back(std::move(c));
  }
  return space;
}

IndexResult index(const IsoRep2& rep, const ToleranceConfig& tol) {
  IndexResult result;
  const CocycleSpace here = cocycle_space(rep, tol);
  result.value = here.dim();
  bool stable = here.stable;

  if (auto wider = with_level(rep, rep.trunc.L + tol.stabilization_delta, tol)) {
    const CocycleSpace there = cocycle_space(*wider, tol);
    result.value_extended_level = there.dim();
    stable = stable && there.stable && there.dim() == here.dim();
  }
  result.stable = stable;

  if (rep.source.kind == FamilyKind::truncated_infinite) {
    if (auto larger = with_family_size(rep, rep.trunc.n + tol.stabilization_delta, tol)) {
      const CocycleSpace grown = cocycle_space(*larger, tol);
      result.value_extended_family = grown.dim();
      result.kind = stable && grown.stable && grown.dim() > here.dim() ? IndexKind::unbounded_with_truncation
                                                                       : IndexKind::unstable;
      return result;
    }
  }
  result.kind = stable ? IndexKind::finite : IndexKind::unstable;
  return result;
}

std::size_t index_formula_projection_family(const ProjectionFamily& fam, const ToleranceConfig& tol) {
  fam.validate(tol);
  const Eigen::Index n = fam.dim();
  return static_cast<std::size_t>(nullspace(fam.unitary - ComplexMatrix::Identity(n, n), tol, 1.0).cols());
}

Cocycle2 cocycle_from_fixed_vector(const ProjectionFamily& fam, const ComplexVector& x,
                                   const TruncationParams& trunc) {
  if (x.size() != fam.dim() || trunc.n != fam.dim()) throw DimensionMismatch("fixed vector / family / truncation");
  Cocycle2 c;
  c.eta10 = ComplexVector::Zero(trunc.dim());
  c.eta01 = ComplexVector::Zero(trunc.dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) c.eta10(i * trunc.L) = x(i);
  for (int j = 0; j < trunc.L; ++j) {
    const ComplexVector y = fam.unitary * fam.tail_projection(j + 1) * x;
    for (Eigen::Index i = 0; i < y.size(); ++i) c.eta01(i * trunc.L + j) = y(i);
  }
  return c;
}

ComplexVector evaluate_along(const Cocycle2& c, const IsoRep2& rep, std::string_view path) {
  ComplexVector eta = ComplexVector::Zero(rep.dim());
  for (const char step : path) {
    if (step == '1') {
      eta = c.eta10 + rep.w1 * eta;
    } else if (step == '2') {
      eta = c.eta01 + rep.w2 * eta;
    } else {
      throw InputError("path steps must be '1' or '2'");
    }
  }
  return eta;
}

ComplexVector evaluate(const Cocycle2& c, const IsoRep2& rep, Point2 point, const ToleranceConfig& tol) {
  if (point.m < 0 || point.n < 0) throw InputError("lattice point must lie in N^2");
  const std::string first_m = std::string(static_cast<std::size_t>(point.m), '1') + std::string(static_cast<std::size_t>(point.n), '2');
  const std::string first_n = std::string(static_cast<std::size_t>(point.n), '2') + std::string(static_cast<std::size_t>(point.m), '1');
  ComplexVector a = evaluate_along(c, rep, first_m);
  const ComplexVector b = evaluate_along(c, rep, first_n);
  const double gap = max_abs(a - b);
  if (gap > tol.identity_tol) {
    throw InconsistencyError("cocycle evaluation depends on the path at (" + std::to_string(point.m) + ", " +
                             std::to_string(point.n) + "): deviation " + std::to_string(gap));
  }
  return a;
}

namespace {

IsoRep2 generators_only(const IsoRep2& rep, Point2 a, Point2 b) {
  IsoRep2 q;
  q.w1 = rep.power(a);
  q.w2 = rep.power(b);
  q.trunc = rep.trunc;
  q.interior_projector = rep.interior_projector;
  return q;
}

struct Decomposition {
  Point2 x;  // coefficients of x in (a, b)
  Point2 y;
};

constexpr int kMaxCoefficient = 16;

std::optional<Decomposition> decompose(Point2 a, Point2 b, Point2 g) {
  const int det = a.m * b.n - a.n * b.m;
  if (det == 0) return std::nullopt;
  for (int total = 0; total <= 2 * kMaxCoefficient; ++total) {
    for (int p = std::max(0, total - kMaxCoefficient); p <= std::min(total, kMaxCoefficient); ++p) {
      const int q = total - p;
      const Point2 x = a * p + b * q;
      const Point2 y = x - g;
      const int r_num = y.m * b.n - y.n * b.m;
      const int s_num = a.m * y.n - a.n * y.m;
      if (r_num % det != 0 || s_num % det != 0) continue;
      const int r = r_num / det;
      const int s = s_num / det;
      if (r < 0 || s < 0 || r > kMaxCoefficient || s > kMaxCoefficient) continue;
      return Decomposition{{p, q}, {r, s}};
    }
  }
  return std::nullopt;
}

}  // namespace

Cocycle2 restrict_cocycle(const Cocycle2& c, const IsoRep2& rep, Point2 a, Point2 b, const ToleranceConfig& tol) {
  return {evaluate(c, rep, a, tol), evaluate(c, rep, b, tol)};
}

Cocycle2 extend_cocycle(const IsoRep2& rep, Point2 a, Point2 b, const Cocycle2& eta_on_q,
                        const ToleranceConfig& tol) {
  const IsoRep2 q = generators_only(rep, a, b);
  std::array<ComplexVector, 2> xi;
  for (int g = 0; g < 2; ++g) {
    const Point2 gen = g == 0 ? Point2{1, 0} : Point2{0, 1};
    const auto dec = decompose(a, b, gen);
    if (!dec) {
      throw InconsistencyError("no decomposition of generator " + std::to_string(g + 1) +
                               " as a difference of points generated by a, b");
    }
    const ComplexMatrix& v = rep.generator(g);
    xi[g] = evaluate(eta_on_q, q, dec->x, tol) - v * evaluate(eta_on_q, q, dec->y, tol);
    // Shifting both points by a must give the same value.
    const ComplexVector again =
        evaluate(eta_on_q, q, dec->x + Point2{1, 0}, tol) - v * evaluate(eta_on_q, q, dec->y + Point2{1, 0}, tol);
    const double gap = max_abs(again - xi[g]);
    if (gap > tol.identity_tol) {
      throw InconsistencyError("extension is not well defined for generator " + std::to_string(g + 1) +
                               ": deviation " + std::to_string(gap));
    }
  }
  Cocycle2 out{xi[0], xi[1]};
  const double residual = cocycle_residuals(out, rep).max();
  if (residual > tol.identity_tol) {
    throw InconsistencyError("extended pair violates the cocycle relations: residual " + std::to_string(residual));
  }
  return out;
}

std::size_t cocycle_dim_1d(const ComplexMatrix& sigma, const ToleranceConfig& tol) {
  return static_cast<std::size_t>(nullspace(sigma.adjoint(), tol).cols());
}

}  // namespace isorep
