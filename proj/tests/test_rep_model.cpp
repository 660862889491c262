#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "isorep/errors.hpp"
#include "isorep/rep_model.hpp"

using namespace isorep;
using namespace testing;

namespace {

ComplexVector example2_a() { return ComplexVector::Constant(4, 0.5); }

// Index of e_i (x) delta_j.
Eigen::Index at(const TruncationParams& t, Eigen::Index i, Eigen::Index j) { return i * t.L + j; }

}  // namespace

TEST_CASE("truncation parameters") {
  CHECK_NOTHROW(TruncationParams{2, 8, 2}.validate());
  CHECK_THROWS_AS((TruncationParams{0, 8, 2}.validate()), InputError);
  CHECK_THROWS_AS((TruncationParams{2, 8, 8}.validate()), InputError);
  CHECK_THROWS_AS((TruncationParams{2, 8, 0}.validate()), InputError);
  const TruncationParams d = default_truncation(3, 3);
  CHECK(d.L == 24);
  CHECK(d.guard == 6);
  CHECK(TruncationParams{2, 8, 3}.in_guard(5));
  CHECK_FALSE(TruncationParams{2, 8, 3}.in_guard(4));
  CHECK(TruncationParams{2, 8, 3}.in_guard(8 + 7));
}

TEST_CASE("truncated shift") {
  const ComplexMatrix s = truncated_shift(4);
  CHECK(max_abs(s * basis_vector(4, 1) - basis_vector(4, 2)) == 0.0);
  CHECK(max_abs(s * basis_vector(4, 3)) == 0.0);
}

TEST_CASE("n = 1, d = 1 family: W1 = S, W2 = I, W2 is not pure") {
  const ProjectionFamily fam = ProjectionFamily::standard_basis(ComplexMatrix::Identity(1, 1));
  const TruncationParams t{1, 4, 1};
  const IsoRep2 rep = build_projection_family_rep(fam, t);
  CHECK(max_abs(rep.w1 - truncated_shift(4)) == 0.0);
  CHECK(max_abs(rep.w2 - ComplexMatrix::Identity(4, 4)) == 0.0);
  const PurityReport pr = strong_purity_check(rep, 3);
  CHECK(pr.verdict == Purity::not_pure);
}

TEST_CASE("n = 2, U = I, standard projections: W2 on basis vectors") {
  const ProjectionFamily fam = ProjectionFamily::standard_basis(ComplexMatrix::Identity(2, 2));
  const TruncationParams t{2, 4, 2};
  const IsoRep2 rep = build_projection_family_rep(fam, t);
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(max_abs(rep.w2 * basis_vector(8, at(t, 0, j)) - basis_vector(8, at(t, 0, j))) == 0.0);
    CHECK(max_abs(rep.w2 * basis_vector(8, at(t, 1, j)) - basis_vector(8, at(t, 1, j + 1))) == 0.0);
  }
  CHECK(max_abs(rep.w1 - kron(ComplexMatrix::Identity(2, 2), truncated_shift(4))) == 0.0);
}

TEST_CASE("Example 2 generators are built from the reflection U_a = 1 - 2 P_a") {
  const ComplexVector a = example2_a();
  const ComplexMatrix u = reflection_unitary(a);
  CHECK(max_abs(u - (ComplexMatrix::Identity(4, 4) - 2.0 * a * a.adjoint())) < 1e-15);
  const TruncationParams t{4, 8, 4};
  const IsoRep2 rep = build_reflection_rep(a, t);
  // W2 = sum_i U P_i (x) S^{i-1}
  ComplexMatrix w2 = ComplexMatrix::Zero(32, 32);
  ComplexMatrix s_power = ComplexMatrix::Identity(8, 8);
  for (int i = 0; i < 4; ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(4, 4);
    p(i, i) = 1.0;
    w2 += kron(u * p, s_power);
    s_power = truncated_shift(8) * s_power;
  }
  CHECK(max_abs(rep.w2 - w2) < 1e-15);
  CHECK(rep.warnings.empty());
}

TEST_CASE("reflection unitary examples") {
  ComplexVector a(2);
  a << 1.0, 1.0;
  a /= std::sqrt(2.0);
  ComplexMatrix expected(2, 2);
  expected << 0.0, -1.0, -1.0, 0.0;
  CHECK(max_abs(reflection_unitary(a) - expected) < 1e-15);

  const ComplexVector e1 = basis_vector(3, 0);
  CHECK(max_abs(reflection_unitary(e1) - diag({-1.0, 1.0, 1.0})) == 0.0);
  const IsoRep2 rep = build_reflection_rep(e1, TruncationParams{3, 8, 3});
  CHECK_FALSE(rep.warnings.empty());

  CHECK(fixed_space_dim(reflection_unitary(example2_a())) == 3);
  CHECK_THROWS_AS(build_reflection_rep(ComplexVector::Zero(3), TruncationParams{3, 8, 3}), InputError);
}

TEST_CASE("family validation") {
  ProjectionFamily fam = ProjectionFamily::standard_basis(ComplexMatrix::Identity(3, 3));
  CHECK_NOTHROW(fam.validate());
  fam.projections[1] = fam.projections[0];
  CHECK_THROWS_AS(fam.validate(), InputError);
  fam = ProjectionFamily::standard_basis(ComplexMatrix::Identity(3, 3));
  fam.projections.pop_back();
  CHECK_THROWS_AS(fam.validate(), InputError);
  fam = ProjectionFamily::standard_basis(2.0 * ComplexMatrix::Identity(3, 3));
  CHECK_THROWS_AS(fam.validate(), InputError);
  // d > L - guard
  fam = ProjectionFamily::standard_basis(ComplexMatrix::Identity(3, 3));
  CHECK_THROWS_AS(build_projection_family_rep(fam, TruncationParams{3, 4, 2}), InputError);
  CHECK_THROWS_AS(build_projection_family_rep(fam, TruncationParams{2, 8, 2}), InputError);
}

TEST_CASE("tail projections Q_k") {
  const ProjectionFamily fam = ProjectionFamily::standard_basis(ComplexMatrix::Identity(3, 3));
  CHECK(max_abs(fam.tail_projection(0) - ComplexMatrix::Identity(3, 3)) == 0.0);
  CHECK(max_abs(fam.tail_projection(1) - diag({0.0, 1.0, 1.0})) == 0.0);
  CHECK(max_abs(fam.tail_projection(3)) == 0.0);
}

TEST_CASE("validate: built reps pass, broken reps are reported") {
  const IsoRep2 rep = build_reflection_rep(example2_a(), TruncationParams{4, 8, 4});
  const ValidationReport ok = validate(rep);
  CHECK(ok.passed());
  CHECK(ok.isometry_w1 <= 1e-12);
  CHECK(ok.isometry_w2 <= 1e-12);
  CHECK(ok.commutation <= 1e-12);

  IsoRep2 scaled = rep;
  scaled.w1 *= 2.0;
  const ValidationReport bad = validate(scaled);
  CHECK_FALSE(bad.isometry_ok);
  CHECK(std::abs(bad.isometry_w1 - 3.0) < 1e-12);

  IsoRep2 noisy = rep;
  const ComplexVector x = basis_vector(32, 1), y = basis_vector(32, 2);
  noisy.w2 += 1e-3 * x * y.adjoint();
  const ValidationReport nb = validate(noisy);
  CHECK_FALSE(nb.commutation_ok);
  CHECK(nb.commutation > 0.5e-3);
  CHECK(nb.commutation < 2e-3);
}

TEST_CASE("phase times U changes W2 by the phase") {
  const ComplexMatrix u = random_unitary(3, 4);
  const Complex phase = std::polar(1.0, 0.7);
  const TruncationParams t{3, 12, 3};
  const IsoRep2 a = build_projection_family_rep(ProjectionFamily::standard_basis(u), t);
  const IsoRep2 b = build_projection_family_rep(ProjectionFamily::standard_basis(phase * u), t);
  CHECK(max_abs(b.w2 - phase * a.w2) < 1e-14);
  CHECK(validate(a).passed());
  CHECK(validate(b).passed());
}

TEST_CASE("interior isometry property over random families") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    const IsoRep2 rep =
        build_projection_family_rep(ProjectionFamily::standard_basis(random_unitary(n, seed)), default_truncation(n, n));
    const ComplexMatrix& p = rep.interior_projector;
    const ComplexMatrix id = ComplexMatrix::Identity(rep.dim(), rep.dim());
    CHECK(max_abs(p * (rep.w1.adjoint() * rep.w1 - id) * p) <= 1e-12);
    CHECK(max_abs(p * (rep.w2.adjoint() * rep.w2 - id) * p) <= 1e-12);
    CHECK(max_abs(p * (rep.w1 * rep.w2 - rep.w2 * rep.w1) * p) <= 1e-12);
  }
}

TEST_CASE("strong purity") {
  SUBCASE("I (x) S is strongly pure, rank drops by n per step") {
    const ComplexMatrix w = kron(ComplexMatrix::Identity(3, 3), truncated_shift(10));
    const IsoRep2 rep = make_custom_rep(w, w, TruncationParams{3, 10, 3});
    const PurityReport pr = strong_purity_check(rep, 5);
    CHECK(pr.verdict == Purity::strongly_pure);
    REQUIRE(pr.ranks.size() == 2);
    for (std::size_t k = 1; k < pr.ranks[0].size(); ++k) CHECK(pr.ranks[0][k - 1] - pr.ranks[0][k] == 3);
  }
  SUBCASE("depth = L - guard is accepted, beyond is rejected") {
    const IsoRep2 rep = build_reflection_rep(example2_a(), TruncationParams{4, 12, 4});
    CHECK_NOTHROW(strong_purity_check(rep, 8));
    CHECK_THROWS_AS(strong_purity_check(rep, 9), InputError);
    CHECK_THROWS_AS(strong_purity_check(rep, 0), InputError);
  }
  SUBCASE("generic families with d >= 2 are strongly pure, ranks match a brute-force oracle") {
    for (std::uint64_t seed = 10; seed < 14; ++seed) {
      const int n = 2 + static_cast<int>(seed % 3);
      const TruncationParams t = default_truncation(n, n);
      const IsoRep2 rep = build_projection_family_rep(ProjectionFamily::standard_basis(random_unitary(n, seed)), t);
      const int depth = 4;
      const PurityReport pr = strong_purity_check(rep, depth);
      CHECK(pr.verdict == Purity::strongly_pure);
      for (int g = 0; g < 2; ++g) {
        ComplexMatrix w = ComplexMatrix::Identity(rep.dim(), rep.dim());
        for (int k = 1; k <= depth; ++k) {
          w = rep.generator(g) * w;
          const ComplexMatrix range = rep.interior_projector * w * w.adjoint() * rep.interior_projector;
          CHECK(pr.ranks[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)] == jacobi_rank(range, 1e-9));
        }
      }
    }
  }
}

TEST_CASE("reparametrize") {
  const IsoRep2 rep = build_reflection_rep(example2_a(), TruncationParams{4, 16, 4});
  const IsoRep2 same = reparametrize(rep, {1, 0}, {0, 1});
  CHECK(max_abs(same.w1 - rep.w1) == 0.0);
  CHECK(max_abs(same.w2 - rep.w2) == 0.0);

  const IsoRep2 r = reparametrize(rep, {1, 1}, {2, 1});
  CHECK(max_abs(r.w1 - rep.w1 * rep.w2) < 1e-14);
  CHECK(max_abs(r.w2 - rep.w1 * rep.w1 * rep.w2) < 1e-14);
  CHECK(r.trunc.guard == rep.trunc.guard + 3);
  CHECK(validate(r).passed());
  // The guard grows to 7, so depth 4 needs L = 32 before ranks stop touching the edge.
  CHECK(strong_purity_check(r, 4).verdict != Purity::not_pure);
  const IsoRep2 big = reparametrize(build_reflection_rep(example2_a(), TruncationParams{4, 32, 4}), {1, 1}, {2, 1});
  CHECK(strong_purity_check(big, 4).verdict == Purity::strongly_pure);

  CHECK_THROWS_AS(reparametrize(rep, {2, 0}, {0, 2}), InputError);
  CHECK_THROWS_AS(reparametrize(rep, {0, 0}, {0, 1}), InputError);
  CHECK_NOTHROW(reparametrize(rep, {2, 0}, {0, 2}, true));
}

TEST_CASE("lattice powers") {
  const IsoRep2 rep = build_reflection_rep(example2_a(), TruncationParams{4, 8, 4});
  CHECK(max_abs(rep.power({0, 0}) - ComplexMatrix::Identity(32, 32)) == 0.0);
  CHECK(max_abs(rep.power({2, 1}) - rep.w1 * rep.w1 * rep.w2) < 1e-14);
  CHECK_THROWS_AS(rep.power({-1, 0}), InputError);
}

TEST_CASE("with_level and direct sums") {
  const IsoRep2 rep = build_reflection_rep(example2_a(), TruncationParams{4, 8, 4});
  const auto bigger = with_level(rep, 12);
  REQUIRE(bigger.has_value());
  CHECK(bigger->trunc.L == 12);
  CHECK(bigger->dim() == 48);
  const IsoRep2 custom = make_custom_rep(rep.w1, rep.w2, rep.trunc);
  CHECK_FALSE(with_level(custom, 12).has_value());

  const IsoRep2 sum = direct_sum(rep, rep);
  CHECK(sum.dim() == 64);
  CHECK(validate(sum).passed());
  CHECK_THROWS_AS(direct_sum(rep, *bigger), DimensionMismatch);
}

TEST_CASE("truncated infinite family") {
  const ComplexVector a = harmonic_sequence(5);
  CHECK(std::abs(a.norm() - 1.0) < 1e-14);
  CHECK(std::abs(a(0) / a(1) - Complex(2.0)) < 1e-14);
  const IsoRep2 rep = build_truncated_infinite_rep(5);
  CHECK(rep.source.kind == FamilyKind::truncated_infinite);
  CHECK(validate(rep).passed());
  CHECK(to_string(FamilyKind::truncated_infinite) == "truncated_infinite");
}
