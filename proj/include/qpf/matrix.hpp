#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qpf/errors.hpp"

namespace qpf {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Eigendecomposition H = V diag(lambda) V† of a Hermitian matrix,
// eigenvalues ascending, eigenvector columns orthonormal.
struct HermitianEigenSystem {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

// ‖A‖_F
double frobenius_norm(const ComplexMatrix& A);

// ‖H − H†‖_F / ‖H‖_F, absolute when ‖H‖_F is zero.
double hermiticity_residual(const ComplexMatrix& H);

bool all_finite(const ComplexMatrix& A);

// Throws NonHermitianInput when the relative Hermiticity residual exceeds 1e-12.
HermitianEigenSystem hermitian_eig(const ComplexMatrix& H);

// exp(-i H tau) for Hermitian H, computed spectrally.
ComplexMatrix unitary_exp(const ComplexMatrix& H, double tau);

// Same, reusing a precomputed eigensystem (e.g. a cached drift).
ComplexMatrix unitary_exp(const HermitianEigenSystem& eig, double tau);

// Hilbert-Schmidt inner product Tr(A†B).
Complex hs_inner(const ComplexMatrix& A, const ComplexMatrix& B);

}  // namespace qpf
