#pragma once

#include <Eigen/Dense>

#include "cfcnopa/combinations.hpp"
#include "cfcnopa/params.hpp"

namespace cfcnopa::detail {

/// Real 2N x 2N drift matrix A of tau d/dt [X; Y] = A [X; Y] + inputs.
Eigen::MatrixXd langevin_drift(const NopaParams& params);

/// Indicator vector of a collective combination in [X_1..X_N, Y_1..Y_N].
Eigen::VectorXd combination_vector(Combination c, int n_modes);

}  // namespace cfcnopa::detail
