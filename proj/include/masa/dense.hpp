#pragma once

#include <complex>

#include <Eigen/Dense>

namespace masa {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// Entries at or below this modulus count as structural zeros.
inline constexpr double kEntryTolerance = 1e-12;
/// Relative tolerance for rank decisions and span membership residuals.
inline constexpr double kRankTolerance = 1e-9;

}  // namespace masa
