#include "qpf/matrix.hpp"

#include <cmath>

namespace qpf {

namespace {
constexpr double kHermTol = 1e-12;
}

double frobenius_norm(const ComplexMatrix& A) { return A.norm(); }

double hermiticity_residual(const ComplexMatrix& H) {
    const double scale = H.norm();
    const double resid = (H - H.adjoint()).norm();
    if (scale == 0.0) return resid;
    return resid / scale;
}

bool all_finite(const ComplexMatrix& A) {
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            if (!std::isfinite(A(i, j).real()) || !std::isfinite(A(i, j).imag())) return false;
    return true;
}

HermitianEigenSystem hermitian_eig(const ComplexMatrix& H) {
    if (H.rows() != H.cols())
        throw DimensionMismatch("hermitian_eig: matrix is not square");
    if (!all_finite(H))
        throw NonHermitianInput("hermitian_eig: non-finite entries");
    if (hermiticity_residual(H) > kHermTol)
        throw NonHermitianInput("hermitian_eig: input is not Hermitian");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(H);
    if (solver.info() != Eigen::Success)
        throw Error("hermitian_eig: eigensolver failed to converge");
    return HermitianEigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix unitary_exp(const HermitianEigenSystem& eig, double tau) {
    const Eigen::Index d = eig.eigenvalues.size();
    Eigen::VectorXcd phases(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const double a = -eig.eigenvalues[j] * tau;
        phases[j] = Complex(std::cos(a), std::sin(a));
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix unitary_exp(const ComplexMatrix& H, double tau) {
    if (!std::isfinite(tau))
        throw NonFiniteAmplitude("unitary_exp: non-finite time step");
    return unitary_exp(hermitian_eig(H), tau);
}

Complex hs_inner(const ComplexMatrix& A, const ComplexMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw DimensionMismatch("hs_inner: shape mismatch");
    return (A.adjoint() * B).trace();
}

}  // namespace qpf
