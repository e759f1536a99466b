#pragma once

#include <Eigen/Dense>

namespace eft::detail {

/// Unitary DFT of every row of m, in place (forward: exp(-i..)/sqrt(T),
/// backward: exp(+i..)/sqrt(T)). A forward/backward pair is the identity.
void dft_rows_inplace(Eigen::MatrixXcd& m, bool forward);

/// Unitary DFT of every column of m, in place.
void dft_cols_inplace(Eigen::MatrixXcd& m, bool forward);

}  // namespace eft::detail
