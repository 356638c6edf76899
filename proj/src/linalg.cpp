#include "eofcbo/linalg.hpp"

#include <cmath>

namespace eofcbo::linalg {

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            m = std::max(m, std::abs(a(i, j)));
    return m;
}

double hermiticity_residual(const Matrix& h) {
    return max_abs(h - h.adjoint());
}

bool is_finite(const Matrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

HermitianEig hermitian_eig(const Matrix& h) {
    if (h.rows() != h.cols()) throw DimensionError("hermitian_eig: matrix must be square");
    if (!is_finite(h)) throw ValidationError("hermitian_eig: non-finite entries");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw ValidationError("hermitian_eig: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const Matrix& h) {
    if (h.rows() <= 3) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver;
        solver.computeDirect(h, Eigen::EigenvaluesOnly);
        return solver.eigenvalues();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ValidationError("hermitian_eigenvalues: eigensolver failed to converge");
    return solver.eigenvalues();
}

Matrix expm_i_hermitian(const Matrix& h) {
    const HermitianEig eig = hermitian_eig(h);
    const Eigen::Index m = h.rows();
    CVector phases(m);
    for (Eigen::Index k = 0; k < m; ++k)
        phases(k) = std::polar(1.0, eig.eigenvalues(k));
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix expm_skew_hermitian(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("expm_skew_hermitian: matrix must be square");
    const double scale = std::max(1.0, max_abs(a));
    if (max_abs(a + a.adjoint()) > 1e-12 * scale)
        throw StructureError("expm_skew_hermitian: input is not skew-Hermitian");
    // exp(A) = exp(i * (-i A)) with -iA Hermitian
    return expm_i_hermitian(Complex(0.0, -1.0) * a);
}

Matrix psd_sqrt(const Matrix& h, double positivity_tol) {
    const HermitianEig eig = hermitian_eig(h);
    RealVector roots(eig.eigenvalues.size());
    for (Eigen::Index k = 0; k < roots.size(); ++k) {
        const double lambda = eig.eigenvalues(k);
        if (lambda < -positivity_tol)
            throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                              " below -positivity_tol");
        roots(k) = std::sqrt(std::max(lambda, 0.0));
    }
    return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

StiefelPoint gram_schmidt(const Matrix& u, double rank_tol) {
    if (u.cols() > u.rows()) throw DimensionError("gram_schmidt: more columns than rows");
    Matrix q = u;
    // Modified GS with a second pass; normalize only at the end so that the
    // rank check sees the raw residual column norms.
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index i = 0; i < j; ++i) {
                const Complex proj = q.col(i).dot(q.col(j));
                q.col(j) -= proj * q.col(i);
            }
        const double norm = q.col(j).norm();
        if (norm <= rank_tol)
            throw RankDeficientError("gram_schmidt: column " + std::to_string(j) +
                                     " numerically dependent");
        q.col(j) /= norm;
    }
    return StiefelPoint{std::move(q)};
}

StiefelPoint first_r_columns(const Matrix& q, int r) {
    if (q.rows() != q.cols()) throw DimensionError("first_r_columns: matrix must be square");
    if (r > q.rows()) throw DimensionError("first_r_columns: r exceeds matrix dimension");
    if (r < 1) throw DimensionError("first_r_columns: r must be positive");
    const Eigen::Index m = q.rows();
    if ((q.adjoint() * q - Matrix::Identity(m, m)).norm() > kStructTol)
        throw StructureError("first_r_columns: input is not unitary");
    return StiefelPoint{q.leftCols(r)};
}

Matrix stiefel_from_hermitian(const Matrix& h, int r) {
    const HermitianEig eig = hermitian_eig(h);
    const Eigen::Index m = h.rows();
    CVector phases(m);
    for (Eigen::Index k = 0; k < m; ++k)
        phases(k) = std::polar(1.0, eig.eigenvalues(k));
    // Columns 0..r-1 of V diag(e^{i lambda}) V^dagger
    return eig.eigenvectors * (phases.asDiagonal() * eig.eigenvectors.adjoint().leftCols(r));
}

}  // namespace eofcbo::linalg
