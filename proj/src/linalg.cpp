#include "hyperdomain/linalg.hpp"

#include <stdexcept>

#include <Eigen/Dense>

namespace hyperdomain {

std::pair<int, double> numerical_rank(const std::vector<double>& m, int rows, int cols,
                                      double rel_tol) {
    if (rows <= 0 || cols <= 0 || static_cast<int>(m.size()) != rows * cols)
        throw std::invalid_argument("numerical_rank: bad matrix shape");

    Eigen::MatrixXd a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            a(i, j) = m[static_cast<std::size_t>(i) * cols + j];

    double max_row_norm = 0.0;
    for (int i = 0; i < rows; ++i)
        max_row_norm = std::max(max_row_norm, a.row(i).norm());
    if (max_row_norm == 0.0)
        return {0, 0.0};

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    double threshold = rel_tol * max_row_norm;
    int rank = 0;
    double smallest = 0.0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) {
            ++rank;
            smallest = sv(i);
        }
    }
    return {rank, smallest};
}

} // namespace hyperdomain
