#pragma once

#include <utility>
#include <vector>

namespace hyperdomain {

/// Numerical rank of a dense rows x cols matrix (row-major) via singular
/// value decomposition. A singular value is retained when it exceeds
/// rel_tol times the largest row norm. Returns the rank and the smallest
/// retained singular value (0 when the rank is 0).
std::pair<int, double> numerical_rank(const std::vector<double>& m, int rows, int cols,
                                      double rel_tol);

} // namespace hyperdomain
