#pragma once

#include <Eigen/Dense>

namespace eft::detail {

struct SymEig {
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXd vectors;      // columns are eigenvectors
};

/// Full symmetric EVD; LAPACKE dsyevd when available, Eigen otherwise.
/// Throws NumericalError on solver failure.
SymEig sym_eig(const Eigen::MatrixXd& m);

/// In-place sign convention for row-eigenvector matrices: in each row the
/// entry of largest absolute value is made positive, ties broken by lowest
/// column index.
void sign_fix_rows(Eigen::MatrixXd& rows);

}  // namespace eft::detail
