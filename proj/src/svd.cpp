#include "svd.hpp"

#include <algorithm>
#include <complex>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "isorep/errors.hpp"

namespace isorep::detail {

Svd svd(const ComplexMatrix& a, bool vectors) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  Svd out;
  out.values.resize(std::min(m, n));
  if (m == 0 || n == 0) {
    if (vectors) {
      out.u = ComplexMatrix::Identity(m, m);
      out.v = ComplexMatrix::Identity(n, n);
    }
    return out;
  }
  ComplexMatrix vt;
  if (vectors) {
    out.u.resize(m, m);
    vt.resize(n, n);
  } else {
    out.u.resize(1, 1);
    vt.resize(1, 1);
  }
  const char job = vectors ? 'A' : 'N';

  ComplexMatrix work = a;
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, job, m, n, work.data(), m, out.values.data(), out.u.data(),
                                   static_cast<lapack_int>(out.u.rows()), vt.data(), static_cast<lapack_int>(vt.rows()));
  if (info > 0) {
    work = a;
    std::vector<double> superb(static_cast<std::size_t>(std::min(m, n)));
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, job, job, m, n, work.data(), m, out.values.data(), out.u.data(),
                          static_cast<lapack_int>(out.u.rows()), vt.data(), static_cast<lapack_int>(vt.rows()),
                          superb.data());
  }
  if (info != 0) throw Error("SVD failed (LAPACK info " + std::to_string(info) + ")");
  if (vectors) {
    out.v = vt.adjoint();
  } else {
    out.u.resize(0, 0);
  }
  return out;
}

}  // namespace isorep::detail
