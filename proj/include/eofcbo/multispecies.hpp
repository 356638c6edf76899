#pragma once

#include <map>
#include <vector>

#include "eofcbo/cbo_hermitian.hpp"

namespace eofcbo::multispecies {

// Zero-padding embedding into dimension m2 >= m1.
Matrix embed(const Matrix& h, int m2);

// Truncation to dimension m1 <= m2: keep the m1 columns of largest Euclidean
// norm (ties to the lower index), indices re-sorted ascending, principal
// submatrix on those indices.
Matrix truncate(const Matrix& h, int m1);

// embed or truncate to target_m.
Matrix resize(const Matrix& h, int target_m);

// Cross-dimensional Gibbs consensus at dimension target_m. levels[l] holds the
// particles of level l; energies[l][j] must be the objective of the particle
// RESIZED to target_m. The min-shift spans all (level, particle) pairs.
Matrix cross_consensus(const std::vector<std::vector<Matrix>>& levels,
                       const std::vector<std::vector<double>>& energies, double beta,
                       int target_m);

// Coupled multi-species run: each level runs the Hermitian-preserving loop with
// the single-level Gibbs consensus replaced by the cross-dimensional one.
std::map<int, RunTrace> run_multispecies(const SpectralDecomposition& decomp, int dim_a, int dim_b,
                                         const std::vector<int>& level_set, int j,
                                         const CboConfig& config);

}  // namespace eofcbo::multispecies
