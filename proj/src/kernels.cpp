#include "sparsepen/kernels.hpp"

#include <stdexcept>

namespace sparsepen::kernels {

namespace {

void check_shapes(const Eigen::MatrixXd& X, const Eigen::VectorXd& r) {
    if (X.rows() != r.size()) throw std::invalid_argument("residual length does not match rows");
}

} // namespace

Eigen::VectorXd column_correlations_serial(const Eigen::MatrixXd& X, const Eigen::VectorXd& r) {
    check_shapes(X, r);
    const double inv_n = 1.0 / static_cast<double>(X.rows());
    Eigen::VectorXd g(X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) g(j) = X.col(j).dot(r) * inv_n;
    return g;
}

Eigen::VectorXd column_correlations_omp(const Eigen::MatrixXd& X, const Eigen::VectorXd& r) {
    check_shapes(X, r);
    const double inv_n = 1.0 / static_cast<double>(X.rows());
    const Eigen::Index p = X.cols();
    Eigen::VectorXd g(p);
    // Each entry is one column's dot product, so the split cannot change rounding.
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < p; ++j) g(j) = X.col(j).dot(r) * inv_n;
    return g;
}

Eigen::VectorXd column_correlations(const Eigen::MatrixXd& X, const Eigen::VectorXd& r,
                                    Execution exec) {
    return exec == Execution::Serial ? column_correlations_serial(X, r)
                                     : column_correlations_omp(X, r);
}

} // namespace sparsepen::kernels
