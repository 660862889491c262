#include <doctest.h>

#include "helpers.hpp"
#include "isorep/errors.hpp"
#include "isorep/kernels.hpp"

using namespace isorep;
using namespace testing;

namespace {

// Reference construction straight from the cell rule: output cell c reads c + r,
// through `stay` when c + r < M and through `wrap` from c + r - M otherwise.
ComplexMatrix reference_shift_1d(const ComplexMatrix& stay, const ComplexMatrix& wrap, int M, int r) {
  const Eigen::Index b = stay.rows();
  ComplexMatrix v = ComplexMatrix::Zero(M * b, M * b);
  for (int c = 0; c < M; ++c) {
    const int src = c + r;
    if (src < M) {
      v.block(c * b, src * b, b, b) = stay;
    } else {
      v.block(c * b, (src - M) * b, b, b) = wrap;
    }
  }
  return v;
}

ComplexMatrix reference_shift_2d(const ComplexMatrix* const op[2][2], int M, int rx, int ry) {
  const Eigen::Index b = op[0][0]->rows();
  const Eigen::Index n = static_cast<Eigen::Index>(M) * M * b;
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (int x = 0; x < M; ++x) {
    for (int y = 0; y < M; ++y) {
      const int sx = x + rx, sy = y + ry;
      const int wx = sx >= M ? 1 : 0, wy = sy >= M ? 1 : 0;
      const int src = (sx - wx * M) * M + (sy - wy * M);
      v.block((x * M + y) * b, src * b, b, b) = *op[wx][wy];
    }
  }
  return v;
}

struct Fiber2 {
  ComplexMatrix m[4];
  const ComplexMatrix* op[2][2];
  kernels::Shift2 shift;

  Fiber2(int M, int rx, int ry, Eigen::Index b, std::uint64_t seed) {
    for (int k = 0; k < 4; ++k) m[k] = random_gaussian(b, b, seed + k);
    op[0][0] = &m[0];
    op[0][1] = &m[1];
    op[1][0] = &m[2];
    op[1][1] = &m[3];
    shift.cells = M;
    shift.offset_x = rx;
    shift.offset_y = ry;
    shift.op = {{{&m[0], &m[1]}, {&m[2], &m[3]}}};
  }
};

}  // namespace

TEST_CASE("serial and parallel kron agree") {
  const ComplexMatrix a = random_gaussian(5, 3, 1);
  const ComplexMatrix b = random_gaussian(4, 6, 2);
  CHECK(max_abs(kernels::serial::kron(a, b) - kernels::parallel::kron(a, b)) == 0.0);
  CHECK(max_abs(kernels::serial::kron(a, b) - kron(a, b)) == 0.0);
}

TEST_CASE("1-d shift kernels match the cell rule") {
  const ComplexMatrix stay = random_gaussian(3, 3, 5);
  const ComplexMatrix wrap = random_gaussian(3, 3, 6);
  for (int M : {2, 4, 5}) {
    for (int r = 0; r < M; ++r) {
      const kernels::Shift1 s{&stay, &wrap, M, r};
      const ComplexMatrix ref = reference_shift_1d(stay, wrap, M, r);
      CAPTURE(M);
      CAPTURE(r);
      CHECK(max_abs(kernels::serial::shift_matrix_1d(s) - ref) == 0.0);
      CHECK(max_abs(kernels::parallel::shift_matrix_1d(s) - ref) == 0.0);
      // The adjoint kernel is the exact conjugate transpose for any fiber operators.
      CHECK(max_abs(kernels::serial::adjoint_matrix_1d(s) - ref.adjoint()) == 0.0);
      CHECK(max_abs(kernels::parallel::adjoint_matrix_1d(s) - ref.adjoint()) == 0.0);
      const ComplexVector x = random_gaussian(M * 3, 1, 9).col(0);
      CHECK(max_abs(kernels::serial::apply_shift_1d(s, x) - ref * x) < 1e-13);
      CHECK(max_abs(kernels::parallel::apply_shift_1d(s, x) - ref * x) < 1e-13);
    }
  }
}

TEST_CASE("2-d shift kernels match the cell rule") {
  for (int M : {2, 3}) {
    for (int rx = 0; rx < M; ++rx) {
      for (int ry = 0; ry < M; ++ry) {
        const Fiber2 f(M, rx, ry, 2, 40 + rx * 7 + ry);
        const ComplexMatrix ref = reference_shift_2d(f.op, M, rx, ry);
        CAPTURE(M);
        CAPTURE(rx);
        CAPTURE(ry);
        CHECK(max_abs(kernels::serial::shift_matrix_2d(f.shift) - ref) == 0.0);
        CHECK(max_abs(kernels::parallel::shift_matrix_2d(f.shift) - ref) == 0.0);
        CHECK(max_abs(kernels::serial::adjoint_matrix_2d(f.shift) - ref.adjoint()) == 0.0);
        CHECK(max_abs(kernels::parallel::adjoint_matrix_2d(f.shift) - ref.adjoint()) == 0.0);
        const ComplexVector x = random_gaussian(M * M * 2, 1, 3).col(0);
        CHECK(max_abs(kernels::serial::apply_shift_2d(f.shift, x) - ref * x) < 1e-13);
        CHECK(max_abs(kernels::parallel::apply_shift_2d(f.shift, x) - ref * x) < 1e-13);
        CHECK(max_abs(kernels::serial::apply_adjoint_2d(f.shift, x) - ref.adjoint() * x) < 1e-13);
        CHECK(max_abs(kernels::parallel::apply_adjoint_2d(f.shift, x) - ref.adjoint() * x) < 1e-13);
      }
    }
  }
}

TEST_CASE("intertwining residual serial vs parallel vs direct") {
  const ComplexMatrix a = random_gaussian(6, 6, 1);
  const ComplexMatrix t = random_gaussian(6, 4, 2);
  const ComplexMatrix b = random_gaussian(4, 4, 3);
  const double direct = max_abs(a * t - t * b);
  CHECK(std::abs(kernels::serial::intertwining_residual(a, t, b) - direct) < 1e-12);
  CHECK(kernels::serial::intertwining_residual(a, t, b) == kernels::parallel::intertwining_residual(a, t, b));
  CHECK_THROWS_AS(kernels::serial::intertwining_residual(a, t, a), DimensionMismatch);
}

TEST_CASE("kernel argument validation") {
  const ComplexMatrix stay = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix other = ComplexMatrix::Identity(3, 3);
  CHECK_THROWS_AS(kernels::serial::shift_matrix_1d({&stay, &stay, 4, 4}), InputError);
  CHECK_THROWS_AS(kernels::serial::shift_matrix_1d({&stay, nullptr, 4, 1}), InputError);
  CHECK_THROWS_AS(kernels::parallel::shift_matrix_1d({&stay, &other, 4, 1}), DimensionMismatch);
}
