#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dosc {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr cplx I{0.0, 1.0};

// Thrown for invalid configurations (bad dimension, unknown label, cutoff too small).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Frobenius norm of a sparse matrix.
double frob(const SpMat& m);

// Drop entries below rel * max|entry|.
void prune(SpMat& m, double rel = 1e-12);

}  // namespace dosc
