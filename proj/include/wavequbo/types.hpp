#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace wavequbo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// One entry per binary variable, each 0 or 1.
using Bitstring = std::vector<std::uint8_t>;

}  // namespace wavequbo
