#include "eig.hpp"

#include <cmath>
#include <string>

#include "eft/errors.hpp"

#ifdef EFT_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace eft::detail {

SymEig sym_eig(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ShapeError("symmetric EVD needs a square matrix");
  const int n = static_cast<int>(m.rows());
  SymEig out;

#ifdef EFT_HAVE_LAPACKE
  if (n >= 64) {
    out.vectors = m;
    out.eigenvalues.resize(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(),
                                           n, out.eigenvalues.data());
    if (info != 0)
      throw NumericalError("dsyevd failed with info=" + std::to_string(info));
    return out;
  }
#endif

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric EVD did not converge");
  out.eigenvalues = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

void sign_fix_rows(Eigen::MatrixXd& rows) {
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    Eigen::Index best = 0;
    double best_abs = std::abs(rows(r, 0));
    for (Eigen::Index c = 1; c < rows.cols(); ++c) {
      const double a = std::abs(rows(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = c;
      }
    }
    if (rows(r, best) < 0.0) rows.row(r) = -rows.row(r);
  }
}

}  // namespace eft::detail
