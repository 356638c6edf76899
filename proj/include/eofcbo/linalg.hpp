#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "eofcbo/errors.hpp"

namespace eofcbo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Central tolerances: structural residuals, strict identity checks, PSD slack.
inline constexpr double kStructTol = 1e-10;
inline constexpr double kStrictTol = 1e-12;
inline constexpr double kPsdSlack = 1e-10;
inline constexpr double kRankTol = 1e-10;

// M x r matrix with orthonormal columns (a point on the complex Stiefel
// manifold V_r(C^M)).
struct StiefelPoint {
    Matrix frame;  // M x r, frame.adjoint() * frame = I_r within kStructTol

    int ambient_dim() const { return static_cast<int>(frame.rows()); }
    int frame_dim() const { return static_cast<int>(frame.cols()); }

    double orthonormality_residual() const {
        const Eigen::Index r = frame.cols();
        return (frame.adjoint() * frame - Matrix::Identity(r, r)).norm();
    }
};

namespace linalg {

double max_abs(const Matrix& a);
double hermiticity_residual(const Matrix& h);  // max |H - H^dagger|
bool is_finite(const Matrix& a);

struct HermitianEig {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // unitary, columns match eigenvalues
};

// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
HermitianEig hermitian_eig(const Matrix& h);

// Eigenvalues only (ascending), for hot paths.
RealVector hermitian_eigenvalues(const Matrix& h);

// exp(iH) for Hermitian H, via the spectral route; result is unitary.
Matrix expm_i_hermitian(const Matrix& h);

// exp(A) for skew-Hermitian A (validated to 1e-12); result is unitary.
Matrix expm_skew_hermitian(const Matrix& a);

// PSD square root; eigenvalues clipped at zero, negative beyond the slack is an
// error.
Matrix psd_sqrt(const Matrix& h, double positivity_tol = kPsdSlack);

// Modified Gram-Schmidt (classical column order) with one re-orthogonalization
// pass. Throws RankDeficientError below rank_tol.
StiefelPoint gram_schmidt(const Matrix& u, double rank_tol = kRankTol);

// First r columns of a unitary matrix.
StiefelPoint first_r_columns(const Matrix& q, int r);

// First r columns of exp(iH) without re-validating unitarity (solver hot path;
// the spectral construction is unitary by design).
Matrix stiefel_from_hermitian(const Matrix& h, int r);

}  // namespace linalg
}  // namespace eofcbo
