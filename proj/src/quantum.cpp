#include "eofcbo/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eofcbo::quantum {

namespace {

constexpr double kLog2 = 0.6931471805599453;  // ln 2

double entropy_bits_from_eigenvalues(const RealVector& evals, double clip_tol) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
        const double lambda = evals(k);
        if (lambda < -kPsdSlack)
            throw NotPsdError("von_neumann_entropy: eigenvalue " + std::to_string(lambda) +
                              " below -1e-10");
        if (lambda > clip_tol) s -= lambda * std::log(lambda);
    }
    return s / kLog2;
}

}  // namespace

DensityMatrix validate_density(const Matrix& rho, int dim_a, int dim_b) {
    if (dim_a < 1 || dim_b < 1) throw DimensionError("validate_density: dimensions must be positive");
    const int n = dim_a * dim_b;
    if (rho.rows() != n || rho.cols() != n)
        throw DimensionError("validate_density: matrix side must equal dim_a*dim_b");
    if (!linalg::is_finite(rho)) throw ValidationError("validate_density: non-finite entries");
    if (linalg::hermiticity_residual(rho) > 1e-12)
        throw NotHermitianError("validate_density: matrix is not Hermitian within 1e-12");
    const double trace = rho.trace().real();
    if (std::abs(trace - 1.0) > 1e-10)
        throw TraceError("validate_density: trace " + std::to_string(trace) + " differs from 1");
    const RealVector evals = linalg::hermitian_eigenvalues(rho);
    if (evals.minCoeff() < -kPsdSlack)
        throw NotPsdError("validate_density: eigenvalue " + std::to_string(evals.minCoeff()) +
                          " below -1e-10");
    return DensityMatrix{dim_a, dim_b, rho};
}

SpectralDecomposition spectral_decompose(const DensityMatrix& dm, double rank_tol) {
    const linalg::HermitianEig eig = linalg::hermitian_eig(dm.rho);
    const Eigen::Index n = dm.rho.rows();
    // eigenvalues come ascending; keep those above rank_tol, reversed to descending
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = n - 1; k >= 0; --k)
        if (eig.eigenvalues(k) > rank_tol) keep.push_back(k);
    const int r = static_cast<int>(keep.size());
    if (r == 0) throw ValidationError("spectral_decompose: matrix has numerical rank 0");

    SpectralDecomposition out;
    out.rank = r;
    out.probabilities.resize(r);
    out.vectors.resize(n, r);
    for (int k = 0; k < r; ++k) {
        out.probabilities(k) = eig.eigenvalues(keep[k]);
        out.vectors.col(k) = eig.eigenvectors.col(keep[k]);
    }
    out.scaled_frame = out.vectors * out.probabilities.cwiseSqrt().asDiagonal();
    return out;
}

Matrix build_w(const SpectralDecomposition& decomp, const StiefelPoint& u) {
    if (u.frame_dim() != decomp.rank)
        throw DimensionError("build_w: U frame dimension must equal decomposition rank");
    return decomp.scaled_frame * u.frame.adjoint();
}

std::vector<Branch> branch_decomposition(const Matrix& w, double weight_tol) {
    std::vector<Branch> branches;
    branches.reserve(w.cols());
    for (Eigen::Index m = 0; m < w.cols(); ++m) {
        const double sigma = w.col(m).squaredNorm();
        if (sigma <= weight_tol) continue;
        branches.push_back(Branch{sigma, w.col(m) / std::sqrt(sigma)});
    }
    return branches;
}

Matrix partial_trace_b(const CVector& phi, int dim_a, int dim_b) {
    if (phi.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
        throw DimensionError("partial_trace_b: vector length must equal dim_a*dim_b");
    if (std::abs(phi.norm() - 1.0) > 1e-10)
        throw ValidationError("partial_trace_b: input vector is not normalized");
    using RowMajorMap =
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    RowMajorMap coeff(phi.data(), dim_a, dim_b);
    return coeff * coeff.adjoint();
}

double von_neumann_entropy(const Matrix& rho_a, double clip_tol) {
    const double trace = rho_a.trace().real();
    if (std::abs(trace - 1.0) > 1e-8)
        throw ValidationError("von_neumann_entropy: trace differs from 1 beyond 1e-8");
    return entropy_bits_from_eigenvalues(linalg::hermitian_eigenvalues(rho_a), clip_tol);
}

ObjectiveValue entanglement_objective(const SpectralDecomposition& decomp, const StiefelPoint& u,
                                      int dim_a, int dim_b) {
    const Matrix w = build_w(decomp, u);
    ObjectiveValue out;
    for (const Branch& branch : branch_decomposition(w)) {
        const double entropy = von_neumann_entropy(partial_trace_b(branch.phi, dim_a, dim_b));
        out.per_branch.emplace_back(branch.sigma, entropy);
        out.value += branch.sigma * entropy;
    }
    return out;
}

double objective_value(const SpectralDecomposition& decomp, const Matrix& u_frame, int dim_a,
                       int dim_b) {
    const Matrix w = decomp.scaled_frame * u_frame.adjoint();
    using RowMajorMap =
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    double value = 0.0;
    for (Eigen::Index m = 0; m < w.cols(); ++m) {
        const double sigma = w.col(m).squaredNorm();
        if (sigma <= 1e-12) continue;
        RowMajorMap coeff(w.col(m).data(), dim_a, dim_b);
        const Matrix rho_a = (coeff * coeff.adjoint()) / sigma;
        value +=
            sigma * entropy_bits_from_eigenvalues(linalg::hermitian_eigenvalues(rho_a), 1e-12);
    }
    return value;
}

}  // namespace eofcbo::quantum
