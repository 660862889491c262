#include "isorep/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "isorep/cocycle.hpp"
#include "isorep/commutant.hpp"
#include "isorep/errors.hpp"

namespace isorep {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
}

const std::vector<std::string>& suite_presets() {
  static const std::vector<std::string> presets{"example2", "example3_trunc", "projection_random",
                                                "reparam",  "induced1d",      "induced2d"};
  return presets;
}

ComplexVector example2_vector() { return ComplexVector::Constant(4, 0.5); }

ComplexVector example2_other_vector() {
  ComplexVector b(4);
  b << 0.8, 0.1, 0.1, 0.1;
  return b.normalized();
}

RandomFamily random_family(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomFamily out;
  const int n = 2 + static_cast<int>(rng() % 4);
  if (rng() % 2 == 0) {
    out.blocks = {n};
  } else {
    const int first = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    out.blocks = {first, n - first};
  }
  std::uniform_real_distribution<double> phase(0.5, 2.0 * std::numbers::pi - 0.5);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  int offset = 0;
  for (std::size_t b = 0; b < out.blocks.size(); ++b) {
    const int size = out.blocks[b];
    const int fixed = static_cast<int>(rng() % static_cast<std::uint64_t>(size + 1));
    out.fixed_dim += fixed;
    ComplexVector diag(size);
    for (int k = 0; k < size; ++k) diag(k) = k < fixed ? Complex(1.0, 0.0) : std::polar(1.0, phase(rng));
    const ComplexMatrix v = random_unitary(size, rng());
    u.block(offset, offset, size, size) = v * diag.asDiagonal() * v.adjoint();
    offset += size;
  }
  out.family = ProjectionFamily::standard_basis(u);
  return out;
}

namespace {

SuiteCheck check(std::string name, std::string anchor, double residual, bool pass, Json detail = Json::object()) {
  return SuiteCheck{std::move(name), std::move(anchor), residual, pass, std::move(detail)};
}

SuiteCheck tolerance_check(std::string name, std::string anchor, double residual, const ToleranceConfig& tol,
                           Json detail = Json::object()) {
  const bool pass = residual <= tol.identity_tol;
  return check(std::move(name), std::move(anchor), residual, pass, std::move(detail));
}

SuiteCheck count_check(std::string name, std::string anchor, std::size_t actual, std::size_t expected,
                       Json detail = Json::object()) {
  detail["actual"] = actual;
  detail["expected"] = expected;
  const double gap = std::abs(static_cast<double>(actual) - static_cast<double>(expected));
  return check(std::move(name), std::move(anchor), gap, actual == expected, std::move(detail));
}

void append(std::vector<SuiteCheck>& into, std::vector<SuiteCheck> more) {
  for (auto& c : more) into.push_back(std::move(c));
}

ComplexVector unit_vector(Eigen::Index n, std::uint64_t seed) {
  ComplexVector v = random_gaussian(n, 1, seed);
  return v / v.norm();
}

// Distance of each column of `vectors` from the span of the orthonormal columns `basis`.
double span_residual(const ComplexMatrix& basis, const ComplexMatrix& vectors) {
  if (vectors.cols() == 0) return 0.0;
  if (basis.cols() == 0) return max_abs(vectors);
  return max_abs(vectors - basis * (basis.adjoint() * vectors));
}

}  // namespace

// ---- induced identity batteries --------------------------------------------------

std::vector<SuiteCheck> induced_identity_checks_1d(const GridRep1& grid, int horizon, const ToleranceConfig& tol) {
  const int M = grid.M();
  const int J = horizon * M;
  const Eigen::Index n = grid.dim();
  const Eigen::Index B = grid.base_dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix p = grid.interior_projector();
  std::vector<SuiteCheck> out;

  double adjoint = 0.0;
  double isometry = 0.0;
  double projection = 0.0;
  for (int j = 0; j <= J; ++j) {
    const ComplexMatrix& v = grid.V(j);
    adjoint = std::max(adjoint, max_abs(grid.adjoint_formula(j) - v.adjoint()));
    isometry = std::max(isometry, max_abs(p * (v.adjoint() * v - id) * p));
    const ComplexMatrix e = v * p * v.adjoint();
    projection = std::max(projection, max_abs(e * e - e));
  }
  out.push_back(tolerance_check("induced1d.adjoint_formula", "piecewise adjoint formula equals V_t^*", adjoint, tol,
                                Json{{"times", J + 1}}));
  out.push_back(tolerance_check("induced1d.isometry", "V_t^* V_t = 1 on the interior", isometry, tol));
  out.push_back(tolerance_check("induced1d.range_projection", "V_t P V_t^* is a projection", projection, tol));

  double semigroup = 0.0;
  for (int s = 0; s <= J; ++s) {
    for (int t = 0; s + t <= J; ++t) semigroup = std::max(semigroup, max_abs(grid.V(s) * grid.V(t) - grid.V(s + t)));
  }
  semigroup = std::max(semigroup, max_abs(grid.V(0) - id));
  semigroup = std::max(semigroup, max_abs(grid.V(M) - kron(ComplexMatrix::Identity(M, M), grid.sigma())));
  out.push_back(tolerance_check("induced1d.semigroup", "V_s V_t = V_{s+t}, V_0 = 1, V_1 = 1 (x) sigma(1)", semigroup,
                                tol));

  // ker V_t^*: step functions vanishing below cell M - j with top values in ker sigma^*.
  const ComplexMatrix sigma_adj = grid.sigma().adjoint();
  const ComplexMatrix base_kernel = nullspace(sigma_adj, tol);
  double membership = 0.0;
  bool dims_ok = true;
  Json dims = Json::array();
  for (int j = 1; j < M; ++j) {
    const ComplexMatrix vadj = grid.V(j).adjoint();
    const ComplexMatrix k = nullspace(vadj, tol);
    const Eigen::Index expected = j * base_kernel.cols();
    dims.push_back(Json{{"ticks", j}, {"dim", k.cols()}, {"expected", expected}});
    dims_ok = dims_ok && k.cols() == expected;
    for (int c = 0; c < M; ++c) {
      const ComplexMatrix block = k.middleRows(c * B, B);
      membership = std::max(membership, c < M - j ? max_abs(block) : max_abs(sigma_adj * block));
      if (c >= M - j) {
        for (Eigen::Index x = 0; x < base_kernel.cols(); ++x) {
          ComplexVector e = ComplexVector::Zero(n);
          e.segment(c * B, B) = base_kernel.col(x);
          membership = std::max(membership, max_abs(vadj * e));
        }
      }
    }
  }
  out.push_back(check("induced1d.ker_adjoint", "ker V_t^* = step functions on [1 - t, 1) with values in ker sigma(1)^*",
                      membership, dims_ok && membership <= tol.identity_tol, Json{{"dims", std::move(dims)}}));
  return out;
}

std::vector<SuiteCheck> induced_cocycle_checks_1d(const GridRep1& grid, std::size_t expected_dim, int horizon,
                                                  const ToleranceConfig& tol) {
  std::vector<SuiteCheck> out;
  const GridCocycleSolve1 solve = grid_cocycle_space_1d(grid, horizon, tol);
  out.push_back(count_check("induced1d.cocycle_dim", "cocycle space of the induced representation has dim A(sigma)",
                            solve.dim, expected_dim,
                            Json{{"unfiltered_dim", solve.unfiltered_dim}, {"horizon", horizon}, {"M", grid.M()}}));
  out.push_back(tolerance_check("induced1d.cocycle_residuals", "solved grid cocycles are additive and in ker V_t^*",
                                solve.residuals.max(), tol));

  const ComplexMatrix base_kernel = nullspace(grid.sigma().adjoint(), tol);
  const int J = horizon * grid.M();
  const Eigen::Index B = grid.dim();
  double lifted_residual = 0.0;
  ComplexMatrix lifted(J * B, base_kernel.cols());
  for (Eigen::Index x = 0; x < base_kernel.cols(); ++x) {
    const auto eta = discrete_cocycle_1d(grid.sigma(), base_kernel.col(x), horizon + 1);
    const StepCocycle xi = lift_cocycle_1d(eta, grid, tol);
    lifted_residual = std::max(lifted_residual, step_residuals(xi, grid).max());
    for (int j = 1; j <= J; ++j) lifted.col(x).segment((j - 1) * B, B) = xi.values[static_cast<std::size_t>(j)];
  }
  out.push_back(tolerance_check("induced1d.lift_additivity", "lifted cocycles are additive cocycles of V",
                                lifted_residual, tol, Json{{"lifted", base_kernel.cols()}}));

  ComplexMatrix solved(J * B, static_cast<Eigen::Index>(solve.dim));
  for (std::size_t k = 0; k < solve.dim; ++k) {
    for (int j = 1; j <= J; ++j) {
      solved.col(static_cast<Eigen::Index>(k)).segment((j - 1) * B, B) = solve.basis[k].values[static_cast<std::size_t>(j)];
    }
  }
  // Solved basis columns are orthonormal, so the lifts must lie in their span and match
  // its dimension.
  const double residual = span_residual(solved, lifted);
  const bool same_dim = static_cast<Eigen::Index>(solve.dim) == base_kernel.cols() &&
                        (lifted.cols() == 0 || numerical_rank(lifted, tol) == lifted.cols());
  out.push_back(check("induced1d.lift_span", "the lift is a bijection onto the grid cocycles", residual,
                      same_dim && residual <= tol.identity_tol));
  return out;
}

std::vector<SuiteCheck> induced_identity_checks_2d(const GridRep2& grid, int vectors, std::uint64_t seed,
                                                   const ToleranceConfig& tol) {
  const int M = grid.M();
  const Eigen::Index n = grid.dim();
  const Eigen::Index B = grid.base_dim();
  const ComplexMatrix pint = grid.rep().interior_projector;
  std::vector<ComplexVector> xs;
  std::vector<ComplexVector> ys;
  for (int v = 0; v < vectors; ++v) {
    xs.push_back(unit_vector(n, seed + 2 * static_cast<std::uint64_t>(v)));
    ys.push_back(unit_vector(n, seed + 2 * static_cast<std::uint64_t>(v) + 1));
  }
  auto interior = [&](const ComplexVector& x) {
    ComplexVector out(x.size());
    for (int c = 0; c < M * M; ++c) out.segment(c * B, B) = pint * x.segment(c * B, B);
    return out;
  };

  const int times = (M + 1) * (M + 1);
  double adjoint = 0.0;
  double isometry = 0.0;
  double semigroup = 0.0;
  const int semigroup_vectors = std::min(vectors, 2);
#pragma omp parallel for reduction(max : adjoint, isometry, semigroup) schedule(dynamic)
  for (int idx = 0; idx < times; ++idx) {
    const int j = idx / (M + 1);
    const int k = idx % (M + 1);
    for (int v = 0; v < vectors; ++v) {
      const Complex lhs = grid.apply_adjoint(j, k, xs[static_cast<std::size_t>(v)]).dot(ys[static_cast<std::size_t>(v)]);
      const Complex rhs = xs[static_cast<std::size_t>(v)].dot(grid.apply(j, k, ys[static_cast<std::size_t>(v)]));
      adjoint = std::max(adjoint, std::abs(lhs - rhs));
      const ComplexVector px = interior(xs[static_cast<std::size_t>(v)]);
      isometry = std::max(isometry, (interior(grid.apply_adjoint(j, k, grid.apply(j, k, px))) - px).cwiseAbs().maxCoeff());
    }
    for (int j2 = 0; j + j2 <= M; ++j2) {
      for (int k2 = 0; k + k2 <= M; ++k2) {
        for (int v = 0; v < semigroup_vectors; ++v) {
          const ComplexVector& x = xs[static_cast<std::size_t>(v)];
          const ComplexVector lhs = grid.apply(j, k, grid.apply(j2, k2, x));
          semigroup = std::max(semigroup, (lhs - grid.apply(j + j2, k + k2, x)).cwiseAbs().maxCoeff());
        }
      }
    }
  }

  // V(1, 1) = 1 (x) W1 W2 and V(0, 0) = 1.
  const ComplexMatrix w12 = grid.rep().w1 * grid.rep().w2;
  double unit = 0.0;
  for (const auto& x : xs) {
    ComplexVector expect(n);
    for (int c = 0; c < M * M; ++c) expect.segment(c * B, B) = w12 * x.segment(c * B, B);
    unit = std::max(unit, (grid.apply(M, M, x) - expect).cwiseAbs().maxCoeff());
    unit = std::max(unit, (grid.apply(0, 0, x) - x).cwiseAbs().maxCoeff());
  }

  // flip (1 (x) V1_s) flip = V(s, 0) and 1 (x) V2_t = V(0, t).
  const GridRep1 axis1 = grid.axis(0);
  const GridRep1 axis2 = grid.axis(1);
  const Eigen::Index slab = static_cast<Eigen::Index>(M) * B;
  double flip = 0.0;
  for (int s = 0; s <= M; ++s) {
    for (const auto& x : xs) {
      ComplexVector inner = apply_flip(M, B, x);
      ComplexVector tmp(n);
      for (int c = 0; c < M; ++c) tmp.segment(c * slab, slab) = axis1.apply(s, inner.segment(c * slab, slab));
      flip = std::max(flip, (apply_flip(M, B, tmp) - grid.apply(s, 0, x)).cwiseAbs().maxCoeff());
      for (int c = 0; c < M; ++c) tmp.segment(c * slab, slab) = axis2.apply(s, x.segment(c * slab, slab));
      flip = std::max(flip, (tmp - grid.apply(0, s, x)).cwiseAbs().maxCoeff());
    }
  }

  const Json where{{"M", M}, {"vectors", vectors}, {"times", times}};
  std::vector<SuiteCheck> out;
  out.push_back(tolerance_check("induced2d.adjoint_formula", "region formula equals V_(s,t)^*", adjoint, tol, where));
  out.push_back(tolerance_check("induced2d.isometry", "V_(s,t)^* V_(s,t) = 1 on the interior", isometry, tol, where));
  out.push_back(tolerance_check("induced2d.semigroup", "V_(s,t) V_(s',t') = V_(s+s',t+t')", semigroup, tol, where));
  out.push_back(tolerance_check("induced2d.unit", "V_(1,1) = 1 (x) sigma(1,1), V_(0,0) = 1", unit, tol));
  out.push_back(tolerance_check("induced2d.flip", "flip (1 (x) V1_s) flip = V_(s,0) and 1 (x) V2_t = V_(0,t)", flip,
                                tol));
  return out;
}

std::vector<GridTimeResidual> induced_time_table_2d(const GridRep2& grid, int vectors, std::uint64_t seed) {
  const int M = grid.M();
  const Eigen::Index n = grid.dim();
  const Eigen::Index B = grid.base_dim();
  const ComplexMatrix& pint = grid.rep().interior_projector;
  std::vector<GridTimeResidual> rows(static_cast<std::size_t>((M + 1) * (M + 1)));
#pragma omp parallel for schedule(dynamic)
  for (int idx = 0; idx < (M + 1) * (M + 1); ++idx) {
    GridTimeResidual& row = rows[static_cast<std::size_t>(idx)];
    row.ticks_x = idx / (M + 1);
    row.ticks_y = idx % (M + 1);
    for (int v = 0; v < vectors; ++v) {
      const ComplexVector x = unit_vector(n, seed + 2 * static_cast<std::uint64_t>(v));
      const ComplexVector y = unit_vector(n, seed + 2 * static_cast<std::uint64_t>(v) + 1);
      const Complex lhs = grid.apply_adjoint(row.ticks_x, row.ticks_y, x).dot(y);
      const Complex rhs = x.dot(grid.apply(row.ticks_x, row.ticks_y, y));
      row.adjoint = std::max(row.adjoint, std::abs(lhs - rhs));
      ComplexVector px(n);
      for (int c = 0; c < M * M; ++c) px.segment(c * B, B) = pint * x.segment(c * B, B);
      ComplexVector back = grid.apply_adjoint(row.ticks_x, row.ticks_y, grid.apply(row.ticks_x, row.ticks_y, px));
      for (int c = 0; c < M * M; ++c) back.segment(c * B, B) = pint * back.segment(c * B, B);
      row.isometry = std::max(row.isometry, (back - px).cwiseAbs().maxCoeff());
    }
  }
  return rows;
}

// ---- presets ---------------------------------------------------------------------

namespace {

std::vector<SuiteCheck> rep_checks(const IsoRep2& rep, const ToleranceConfig& tol) {
  const ValidationReport v = validate(rep, tol);
  const double r = std::max({v.isometry_w1, v.isometry_w2, v.commutation});
  return {tolerance_check("rep.validation", "W1, W2 are commuting isometries on the interior", r, tol,
                          to_json(v))};
}

std::vector<SuiteCheck> example2(const SuiteOptions& o) {
  const ToleranceConfig& tol = o.tol;
  std::vector<SuiteCheck> out;
  const ComplexVector a = example2_vector();
  const IsoRep2 rep = build_reflection_rep(a, default_truncation(4, 4), tol);
  const ProjectionFamily& fam = *rep.source.family;
  append(out, rep_checks(rep, tol));

  const IndexResult idx = index(rep, tol);
  out.push_back(check("index", "index of the reflection family is n - 1", std::abs(static_cast<double>(idx.value) - 3.0),
                      idx.kind == IndexKind::finite && idx.value == 3, to_json(idx)));
  out.push_back(count_check("index.formula", "cocycle dimension equals dim ker(U - 1)", idx.value,
                            index_formula_projection_family(fam, tol)));

  const CocycleSpace cs = cocycle_space(rep, tol);
  out.push_back(tolerance_check("cocycle.residuals", "solved pairs satisfy the cocycle relations", cs.residuals.max(),
                                tol, to_json(cs, false)));

  // Cocycles built from fixed vectors of U must lie in the solved space.
  const ComplexMatrix fixed = nullspace(fam.unitary - ComplexMatrix::Identity(4, 4), tol, 1.0);
  ComplexMatrix solved(2 * rep.dim(), static_cast<Eigen::Index>(cs.dim()));
  for (std::size_t k = 0; k < cs.dim(); ++k) solved.col(static_cast<Eigen::Index>(k)) = cs.basis[k].stacked();
  ComplexMatrix built(2 * rep.dim(), fixed.cols());
  double built_residual = 0.0;
  for (Eigen::Index k = 0; k < fixed.cols(); ++k) {
    const Cocycle2 c = cocycle_from_fixed_vector(fam, fixed.col(k), rep.trunc);
    built_residual = std::max(built_residual, cocycle_residuals(c, rep).max());
    built.col(k) = c.stacked();
  }
  built_residual = std::max(built_residual, span_residual(solved, built));
  out.push_back(tolerance_check("cocycle.fixed_vectors", "each x in ker(U - 1) gives a cocycle in the solved space",
                                built_residual, tol));

  const std::size_t structured = structured_commutant_dim(fam, tol);
  out.push_back(count_check("commutant.structured", "C*({U_a, P_i})' = C", structured, 1));
  const CommutantOracle oracle = truncated_commutant(rep, tol, o.seed);
  out.push_back(count_check("commutant.oracle", "truncated commutant agrees with the structured formula", oracle.dim,
                            structured, Json{{"raw_dim", oracle.raw_dim}}));

  const EquivalenceVerdict self = are_unitarily_equivalent(fam, fam, tol, o.seed);
  out.push_back(check("equivalence.self", "a family is equivalent to itself with witness 1",
                      std::max(self.unitarity_residual, self.intertwining_residual),
                      self.status == EquivalenceStatus::equivalent && self.witness &&
                          max_abs(*self.witness - ComplexMatrix::Identity(4, 4)) <= tol.identity_tol,
                      Json{{"status", to_string(self.status)}}));
  const ProjectionFamily other = ProjectionFamily::standard_basis(reflection_unitary(example2_other_vector()));
  const EquivalenceVerdict diff = are_unitarily_equivalent(fam, other, tol, o.seed);
  out.push_back(check("equivalence.moduli", "reflection families with different |a_i| are inequivalent",
                      static_cast<double>(diff.intertwiner_dim), diff.status == EquivalenceStatus::inequivalent,
                      Json{{"status", to_string(diff.status)}, {"intertwiner_dim", diff.intertwiner_dim}}));

  const PurityReport purity = strong_purity_check(rep, 8, tol);
  out.push_back(check("purity", "both generators are pure", 0.0, purity.verdict == Purity::strongly_pure,
                      to_json(purity)));

  const GridRep2 grid(build_reflection_rep(a, TruncationParams{4, 8, 4}, tol), o.grid.value_or(2));
  append(out, induced_identity_checks_2d(grid, 4, o.seed, tol));
  const GridCocycleSolve2 g = grid_cocycle_space_2d(grid, 1, tol);
  out.push_back(check("induced2d.cocycle_span", "lifted cocycles span the grid cocycle space",
                      std::max(g.solved_residuals.max(), g.lifted_residuals.max()),
                      g.passed() && g.solved_residuals.max() <= tol.identity_tol &&
                          g.lifted_residuals.max() <= tol.identity_tol,
                      Json{{"solved_dim", g.solved_dim}, {"lifted_dim", g.lifted_dim}}));
  return out;
}

std::vector<SuiteCheck> example3(const SuiteOptions& o) {
  std::vector<SuiteCheck> out;
  for (int n : {8, 16}) {
    const IsoRep2 rep = build_truncated_infinite_rep(n, o.tol);
    const IndexResult idx = index(rep, o.tol);
    const std::size_t formula = index_formula_projection_family(*rep.source.family, o.tol);
    Json detail = to_json(idx);
    detail["n"] = n;
    detail["formula"] = formula;
    out.push_back(check("index.n" + std::to_string(n), "truncated index is n - 1 and grows with n",
                        std::abs(static_cast<double>(idx.value) - (n - 1.0)),
                        idx.kind == IndexKind::unbounded_with_truncation && idx.value == static_cast<std::size_t>(n - 1) &&
                            formula == idx.value,
                        std::move(detail)));
  }
  return out;
}

std::vector<SuiteCheck> projection_random(const SuiteOptions& o) {
  std::vector<SuiteCheck> out;
  for (int k = 0; k < 10; ++k) {
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(k);
    const RandomFamily rf = random_family(seed);
    const int n = static_cast<int>(rf.family.dim());
    const IsoRep2 rep = build_projection_family_rep(rf.family, TruncationParams{n, 16, n}, o.tol);
    const CocycleSpace cs = cocycle_space(rep, o.tol);
    const std::size_t kernel = index_formula_projection_family(rf.family, o.tol);
    const std::string tag = "family" + std::to_string(k);
    out.push_back(check(tag + ".index", "cocycle dimension equals dim ker(U - 1)",
                        std::abs(static_cast<double>(cs.dim()) - static_cast<double>(kernel)),
                        cs.dim() == kernel && kernel == static_cast<std::size_t>(rf.fixed_dim) && cs.stable,
                        Json{{"seed", seed}, {"n", n}, {"cocycle_dim", cs.dim()}, {"ker_dim", kernel},
                             {"planted_fixed_dim", rf.fixed_dim}, {"blocks", rf.blocks}}));
    const std::size_t structured = structured_commutant_dim(rf.family, o.tol);
    const CommutantOracle oracle = truncated_commutant(rep, o.tol, o.seed);
    out.push_back(count_check(tag + ".commutant", "truncated commutant equals C*({U, P_i})' (x) 1", oracle.dim, structured,
                              Json{{"raw_dim", oracle.raw_dim}}));
  }
  return out;
}

std::vector<SuiteCheck> reparam(const SuiteOptions& o) {
  const ToleranceConfig& tol = o.tol;
  std::vector<SuiteCheck> out;
  const IsoRep2 rep = build_reflection_rep(example2_vector(), default_truncation(4, 4), tol);
  const Point2 a{1, 1};
  const Point2 b{2, 1};
  const IsoRep2 re = reparametrize(rep, a, b);
  append(out, rep_checks(re, tol));

  const IndexResult before = index(rep, tol);
  const IndexResult after = index(re, tol);
  out.push_back(check("index", "reparametrization preserves the index",
                      std::abs(static_cast<double>(before.value) - static_cast<double>(after.value)),
                      before.kind == IndexKind::finite && after.kind == IndexKind::finite && before.value == 3 &&
                          after.value == 3,
                      Json{{"before", to_json(before)}, {"after", to_json(after)}}));

  const std::size_t c_before = truncated_commutant_oracle(rep, tol, o.seed);
  const std::size_t c_after = truncated_commutant_oracle(re, tol, o.seed);
  out.push_back(check("commutant", "reparametrization preserves the commutant",
                      std::abs(static_cast<double>(c_before) - static_cast<double>(c_after)),
                      c_before == 1 && c_after == 1, Json{{"before", c_before}, {"after", c_after}}));

  const CocycleSpace cs = cocycle_space(rep, tol);
  double restrict_residual = 0.0;
  double round_trip = 0.0;
  for (const auto& c : cs.basis) {
    const Cocycle2 r = restrict_cocycle(c, rep, a, b, tol);
    restrict_residual = std::max(restrict_residual, cocycle_residuals(r, re).max());
    const Cocycle2 e = extend_cocycle(rep, a, b, r, tol);
    round_trip = std::max({round_trip, max_abs(e.eta10 - c.eta10), max_abs(e.eta01 - c.eta01)});
  }
  out.push_back(tolerance_check("restrict", "restriction is a cocycle of the reparametrized representation",
                                restrict_residual, tol));
  out.push_back(tolerance_check("extend_restrict", "extension inverts restriction", round_trip, tol,
                                Json{{"basis", cs.dim()}}));
  return out;
}

std::vector<SuiteCheck> induced1d(const SuiteOptions& o) {
  std::vector<SuiteCheck> out;
  const int M = o.grid.value_or(4);
  for (int m = 1; m <= 3; ++m) {
    const GridRep1 grid(shift_isometry(m, 8), M, interior_projector(TruncationParams{m, 8, 3}));
    auto checks = induced_identity_checks_1d(grid, 2, o.tol);
    append(checks, induced_cocycle_checks_1d(grid, static_cast<std::size_t>(m), 2, o.tol));
    for (auto& c : checks) {
      c.name = "shift" + std::to_string(m) + "." + c.name;
      c.detail["multiplicity"] = m;
    }
    append(out, std::move(checks));
  }
  const GridRep1 unitary(random_unitary(3, o.seed), M);
  auto checks = induced_cocycle_checks_1d(unitary, 0, 2, o.tol);
  for (auto& c : checks) c.name = "unitary." + c.name;
  append(out, std::move(checks));
  return out;
}

std::vector<SuiteCheck> induced2d(const SuiteOptions& o) {
  const ToleranceConfig& tol = o.tol;
  std::vector<SuiteCheck> out;
  const IsoRep2 rep = build_reflection_rep(example2_vector(), TruncationParams{4, 8, 4}, tol);
  const GridRep2 grid(rep, o.grid.value_or(2));
  append(out, induced_identity_checks_2d(grid, 4, o.seed, tol));

  const InducedCommutantReport cr = induced_commutant_check_2d(grid, tol, o.seed);
  out.push_back(check("commutant.inclusion", "1 (x) T_0 (x) 1 commutes with every V_(s,t) and V_(s,t)^*",
                      std::max(cr.inclusion_residual, cr.isometry_residual), cr.inclusion_ok,
                      Json{{"structured_dim", cr.structured_dim}, {"isometry_residual", cr.isometry_residual}}));
  out.push_back(count_check("commutant.dimension", "commutant of the grid generators is 1 (x) M(sigma)'", cr.grid_dim,
                            cr.structured_dim, Json{{"raw_dim", cr.grid_raw_dim}}));

  const GridCocycleSolve2 g = grid_cocycle_space_2d(grid, 1, tol);
  out.push_back(check("cocycle.span", "lifted cocycles span the grid cocycle space",
                      std::max(g.solved_residuals.max(), g.lifted_residuals.max()),
                      g.passed() && g.solved_residuals.max() <= tol.identity_tol &&
                          g.lifted_residuals.max() <= tol.identity_tol,
                      Json{{"solved_dim", g.solved_dim}, {"unfiltered_dim", g.unfiltered_dim},
                           {"lifted_dim", g.lifted_dim}, {"lifted_independent", g.lifted_independent},
                           {"solved_in_lifted_span", g.solved_in_lifted_span}}));

  const PaddedGridRep pad = pad_to_d(grid, 3);
  const std::array<int, 3> ticks{1, 1, grid.M() - 1};
  const double pad_residual = max_abs(pad.V(ticks) - grid.V(1, 1));
  const PaddedIndex pi = padded_index(pad, tol);
  const IndexResult base = index(rep, tol);
  out.push_back(check("padding", "W_(t1,t2,t3) = V_(t1,t2) and the padded index equals the base index", pad_residual,
                      pad_residual == 0.0 && pi.total() == base.value,
                      Json{{"padded_index", pi.total()}, {"base_index", base.value}}));
  return out;
}

}  // namespace

SuiteReport verify_suite(const std::string& preset, const SuiteOptions& options) {
  options.tol.validate();
  if (options.grid && *options.grid < 2) throw InputError("grid must be at least 2", "grid");
  SuiteReport r;
  r.preset = preset;
  if (preset == "example2") {
    r.checks = example2(options);
  } else if (preset == "example3_trunc") {
    r.checks = example3(options);
  } else if (preset == "projection_random") {
    r.checks = projection_random(options);
  } else if (preset == "reparam") {
    r.checks = reparam(options);
  } else if (preset == "induced1d") {
    r.checks = induced1d(options);
  } else if (preset == "induced2d") {
    r.checks = induced2d(options);
  } else {
    throw InputError("unknown preset '" + preset + "'", "preset");
  }
  return r;
}

Json to_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"anchor", c.anchor},
                          {"residual", c.residual},
                          {"verdict", c.pass ? "pass" : "fail"},
                          {"detail", c.detail}});
  }
  return Json{{"preset", r.preset}, {"passed", r.passed()}, {"checks", std::move(checks)}};
}

std::string to_csv(const SuiteReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "name,anchor,residual,verdict\n";
  for (const auto& c : r.checks) {
    out << c.name << ",\"" << c.anchor << "\"," << c.residual << ',' << (c.pass ? "pass" : "fail") << '\n';
  }
  return out.str();
}

}  // namespace isorep
