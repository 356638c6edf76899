#pragma once

#include <vector>

#include "eofcbo/linalg.hpp"

namespace eofcbo {

// Bipartite density matrix: Hermitian, PSD, unit trace, side N = dim_a * dim_b.
// Composite index convention: basis state |a>|b> sits at flat index a*dim_b + b.
struct DensityMatrix {
    int dim_a = 0;
    int dim_b = 0;
    Matrix rho;

    int dim() const { return dim_a * dim_b; }
};

// Fixed data of the entanglement objective: eigenpairs of rho above rank_tol,
// probabilities descending, plus the precomputed frame Psi * P^{1/2}.
struct SpectralDecomposition {
    int rank = 0;
    RealVector probabilities;  // descending, each > rank_tol
    Matrix vectors;            // N x r, orthonormal columns
    Matrix scaled_frame;       // Psi * diag(sqrt(P)), N x r
};

struct ObjectiveValue {
    double value = 0.0;  // bits, base 2
    std::vector<std::pair<double, double>> per_branch;  // (weight sigma_m, branch entropy)
};

struct Branch {
    double sigma = 0.0;
    CVector phi;  // unit vector
};

namespace quantum {

DensityMatrix validate_density(const Matrix& rho, int dim_a, int dim_b);

SpectralDecomposition spectral_decompose(const DensityMatrix& dm, double rank_tol = kRankTol);

// W = Psi P^{1/2} U^dagger; columns are the unnormalized branch vectors, and
// W W^dagger reconstructs rho for any Stiefel U.
Matrix build_w(const SpectralDecomposition& decomp, const StiefelPoint& u);

// Columns of W as weighted pure states; branches below weight_tol are dropped.
std::vector<Branch> branch_decomposition(const Matrix& w, double weight_tol = 1e-12);

// Reduced state on subsystem A of a pure bipartite state.
Matrix partial_trace_b(const CVector& phi, int dim_a, int dim_b);

// -sum lambda log2 lambda over eigenvalues above clip_tol, in bits.
double von_neumann_entropy(const Matrix& rho_a, double clip_tol = 1e-12);

// Full pipeline: W, branches, reduced states, entropies, weighted sum.
ObjectiveValue entanglement_objective(const SpectralDecomposition& decomp, const StiefelPoint& u,
                                      int dim_a, int dim_b);

// Objective value only; avoids branch bookkeeping on the solver hot path.
double objective_value(const SpectralDecomposition& decomp, const Matrix& u_frame, int dim_a,
                       int dim_b);

}  // namespace quantum
}  // namespace eofcbo
