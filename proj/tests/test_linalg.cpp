#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "isorep/errors.hpp"
#include "isorep/linalg.hpp"
#include "isorep/rep_model.hpp"

using namespace isorep;
using namespace testing;

TEST_CASE("tolerance config validation") {
  ToleranceConfig tol;
  CHECK_NOTHROW(tol.validate());
  tol.rank_tol = 0.0;
  CHECK_THROWS_AS(tol.validate(), InputError);
  tol = {};
  tol.identity_tol = 1.0;
  CHECK_THROWS_AS(tol.validate(), InputError);
  tol = {};
  tol.stabilization_delta = 0;
  CHECK_THROWS_AS(tol.validate(), InputError);
}

TEST_CASE("kron examples") {
  CHECK(max_abs(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(6, 6)) ==
        0.0);

  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  const ComplexMatrix k = kron(a, ComplexMatrix::Identity(2, 2));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.topRightCorner(2, 2) = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(k - expected) == 0.0);

  // (S3 (x) S3)(e0 (x) e0) = e1 (x) e1, with e_i (x) e_j at index 3 i + j.
  const ComplexMatrix s3 = truncated_shift(3);
  const ComplexVector out = kron(s3, s3) * basis_vector(9, 0);
  CHECK(max_abs(out - basis_vector(9, 1 * 3 + 1)) == 0.0);
}

TEST_CASE("kron acts on product vectors") {
  const ComplexMatrix a = random_gaussian(3, 2, 1);
  const ComplexMatrix b = random_gaussian(2, 4, 2);
  const ComplexVector x = random_gaussian(2, 1, 3).col(0);
  const ComplexVector y = random_gaussian(4, 1, 4).col(0);
  const ComplexVector lhs = kron(a, b) * kron(x, y);
  const ComplexVector rhs = kron(a * x, b * y);
  CHECK(max_abs(lhs - rhs) < 1e-12);
  CHECK(kron(a, b).rows() == 6);
  CHECK(kron(a, b).cols() == 8);
}

TEST_CASE("vec and unvec are inverse, column-major") {
  const ComplexMatrix m = random_gaussian(3, 4, 5);
  const ComplexVector v = vec(m);
  CHECK(v(1) == m(1, 0));
  CHECK(v(3) == m(0, 1));
  CHECK(max_abs(unvec(v, 3, 4) - m) == 0.0);
  // vec(A X B) = (B^T (x) A) vec(X)
  const ComplexMatrix a = random_gaussian(3, 3, 6);
  const ComplexMatrix b = random_gaussian(4, 4, 7);
  CHECK(max_abs(vec(a * m * b) - kron(b.transpose(), a) * v) < 1e-12);
}

TEST_CASE("nullspace examples") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  ComplexMatrix n = nullspace(a);
  REQUIRE(n.cols() == 1);
  CHECK(std::abs(std::abs(n(1, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(n(0, 0)) < 1e-14);

  CHECK(nullspace(ComplexMatrix::Zero(2, 2)).cols() == 2);

  a = ComplexMatrix::Ones(2, 2);
  n = nullspace(a);
  REQUIRE(n.cols() == 1);
  // Unique up to phase: compare projectors with (1, -1)/sqrt(2).
  ComplexVector e(2);
  e << 1.0, -1.0;
  e /= std::sqrt(2.0);
  CHECK(max_abs(n * n.adjoint() - e * e.adjoint()) < 1e-14);
}

TEST_CASE("nullspace agrees with a Jacobi SVD oracle on random low-rank matrices") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Eigen::Index rows = 3 + static_cast<Eigen::Index>(seed % 5) * 3;
    const Eigen::Index cols = 4 + static_cast<Eigen::Index>(seed % 4) * 2;
    const Eigen::Index rank = std::min<Eigen::Index>({rows, cols, 1 + static_cast<Eigen::Index>(seed % 4)});
    const ComplexMatrix a = random_gaussian(rows, rank, 100 + seed) * random_gaussian(rank, cols, 200 + seed);
    const ComplexMatrix n = nullspace(a);
    CAPTURE(seed);
    CHECK(n.cols() == cols - jacobi_rank(a, 1e-9));
    CHECK(n.cols() == cols - numerical_rank(a));
    CHECK(max_abs(n.adjoint() * n - ComplexMatrix::Identity(n.cols(), n.cols())) < 1e-12);
    CHECK(max_abs(a * n) <= 1e-9 * max_abs(a) * static_cast<double>(cols));
  }
}

TEST_CASE("nullspace scale floor recognises rounding-level constraints") {
  const ComplexMatrix q = random_unitary(4, 9);
  const ComplexMatrix u = q * q.adjoint();  // identity up to rounding
  const ComplexMatrix c = u - ComplexMatrix::Identity(4, 4);
  CHECK(nullspace(c, {}, 1.0).cols() == 4);
}

TEST_CASE("spectral norm and its estimate") {
  const ComplexMatrix a = random_gaussian(7, 5, 11);
  const double exact = spectral_norm(a);
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  CHECK(std::abs(exact - svd.singularValues()(0)) < 1e-12);
  const double est = spectral_norm_estimate(a);
  CHECK(est <= exact * (1 + 1e-12));
  CHECK(est > 0.99 * exact);
  CHECK(spectral_norm_estimate(ComplexMatrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("joint_kernel examples") {
  std::vector<ComplexMatrix> cs{ComplexMatrix::Identity(3, 3)};
  CHECK(joint_kernel(cs, 3).cols() == 0);
  cs.clear();
  CHECK(max_abs(joint_kernel(cs, 3) - ComplexMatrix::Identity(3, 3)) == 0.0);
  ComplexMatrix r1(1, 2), r2(1, 2);
  r1 << 1.0, 0.0;
  r2 << 0.0, 1.0;
  cs = {r1, r2};
  CHECK(joint_kernel(cs, 2).cols() == 0);
  cs = {ComplexMatrix::Identity(2, 3)};
  CHECK_THROWS_AS(joint_kernel(cs, 2), DimensionMismatch);
}

TEST_CASE("joint_kernel equals the nullspace of the stacked system") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Eigen::Index n = 9;
    std::vector<ComplexMatrix> cs;
    for (int k = 0; k < 3; ++k) cs.push_back(random_gaussian(2, 1, seed * 10 + k) * random_gaussian(1, n, seed * 20 + k));
    ComplexMatrix stacked(6, n);
    stacked << cs[0], cs[1], cs[2];
    const ComplexMatrix jk = joint_kernel(cs, n);
    const ComplexMatrix ns = nullspace(stacked);
    REQUIRE(jk.cols() == ns.cols());
    CHECK(max_abs(span_projector(jk) - span_projector(ns)) < 1e-10);
  }
}

TEST_CASE("intertwiner_space examples") {
  std::vector<IntertwinerPair> pairs{{ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)}};
  CHECK(intertwiner_space(pairs).size() == 4);

  pairs = {{diag({1.0, 2.0}), diag({1.0, 2.0})}};
  const auto d = intertwiner_space(pairs);
  REQUIRE(d.size() == 2);
  for (const auto& t : d) {
    CHECK(std::abs(t(0, 1)) < 1e-12);
    CHECK(std::abs(t(1, 0)) < 1e-12);
  }

  pairs = {{diag({1.0, 2.0}), diag({3.0, 4.0})}};
  CHECK(intertwiner_space(pairs).empty());
}

TEST_CASE("intertwiner_space basis elements intertwine") {
  const ComplexMatrix u = random_unitary(3, 21);
  const ComplexMatrix v = random_unitary(2, 22);
  ComplexMatrix a = ComplexMatrix::Zero(5, 5);
  a.topLeftCorner(3, 3) = u;
  a.bottomRightCorner(2, 2) = v;
  std::vector<IntertwinerPair> pairs{{a, u}};
  const auto ts = intertwiner_space(pairs);
  CHECK(ts.size() == 3);  // generic u: commutant of u is 3-dimensional, v shares no eigenvalue
  for (const auto& t : ts) CHECK(max_abs(a * t - t * u) < 1e-10);
}

TEST_CASE("star_intertwiner_space agrees with the vectorized route") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    // A block-diagonal *-algebra with a repeated block has a matrix-unit commutant.
    const ComplexMatrix u = random_unitary(2, 300 + seed);
    const ComplexMatrix h = random_gaussian(2, 2, 400 + seed);
    ComplexMatrix g1 = ComplexMatrix::Zero(5, 5), g2 = ComplexMatrix::Zero(5, 5);
    g1.topLeftCorner(2, 2) = u;
    g1.block(2, 2, 2, 2) = u;
    g1(4, 4) = 1.0;
    g2.topLeftCorner(2, 2) = h;
    g2.block(2, 2, 2, 2) = h;
    g2(4, 4) = 0.5;
    const std::vector<ComplexMatrix> gens{g1, g2};
    std::vector<IntertwinerPair> pairs{{g1, g1}, {g2, g2}, {g1.adjoint(), g1.adjoint()}, {g2.adjoint(), g2.adjoint()}};
    const auto dense = intertwiner_space(pairs);
    const auto fast = star_commutant(gens, {}, seed);
    CAPTURE(seed);
    CHECK(dense.size() == 5);  // M_2 (x) 1 plus the scalar corner
    CHECK(fast.size() == dense.size());
    for (const auto& t : fast) {
      CHECK(max_abs(g1 * t - t * g1) < 1e-10);
      CHECK(max_abs(g2.adjoint() * t - t * g2.adjoint()) < 1e-10);
    }
  }
}

TEST_CASE("star_intertwiner_space between distinct algebras") {
  const ComplexMatrix u = random_unitary(3, 51);
  const ComplexMatrix w = random_unitary(3, 52);
  const ComplexMatrix conj = w * u * w.adjoint();
  const std::vector<ComplexMatrix> a{conj}, b{u};
  const auto ts = star_intertwiner_space(a, b);
  CHECK(ts.size() == 3);
  for (const auto& t : ts) CHECK(max_abs(conj * t - t * u) < 1e-10);
  const std::vector<ComplexMatrix> c{random_unitary(3, 53)};
  CHECK(star_intertwiner_space(a, c).empty());
}

TEST_CASE("random_unitary is unitary and reproducible") {
  const ComplexMatrix u = random_unitary(6, 77);
  CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(6, 6)) < 1e-13);
  CHECK(max_abs(u - random_unitary(6, 77)) == 0.0);
  CHECK(max_abs(u - random_unitary(6, 78)) > 1e-3);
}

TEST_CASE("condition number") {
  CHECK(std::abs(condition_number(random_unitary(4, 3)) - 1.0) < 1e-12);
  CHECK(std::abs(condition_number(diag({1.0, 4.0})) - 4.0) < 1e-12);
}
