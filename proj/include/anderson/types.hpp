#pragma once

#include <Eigen/Dense>
#include <complex>

namespace anderson {

using Real = double;
using Complex = std::complex<Real>;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest absolute entry of an Eigen expression.
template <typename Derived>
Real max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace anderson
