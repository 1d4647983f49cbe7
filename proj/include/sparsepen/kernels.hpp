#pragma once

#include "sparsepen/parallel.hpp"

#include <Eigen/Dense>

namespace sparsepen::kernels {

/// g = (1/n) X^T r, one entry per column.
Eigen::VectorXd column_correlations(const Eigen::MatrixXd& X, const Eigen::VectorXd& r,
                                    Execution exec = Execution::Parallel);

Eigen::VectorXd column_correlations_serial(const Eigen::MatrixXd& X, const Eigen::VectorXd& r);
Eigen::VectorXd column_correlations_omp(const Eigen::MatrixXd& X, const Eigen::VectorXd& r);

} // namespace sparsepen::kernels
