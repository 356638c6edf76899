#pragma once

#include <vector>

#include "eofcbo/cbo.hpp"
#include "eofcbo/quantum.hpp"
#include "eofcbo/rng.hpp"

namespace eofcbo::cbo_hermitian {

// GUE sample H = (A + A^dagger)/2 with A having independent standard-normal
// real and imaginary parts; exactly Hermitian by construction.
Matrix gue_sample(int m, RngStream& rng);

// Hermitian noise: real N(0,1) diagonal; Z[m1][m2] = Y1 + i Y2 above the
// diagonal and its conjugate below.
Matrix hermitian_noise(int m, RngStream& rng);

// Gibbs-weighted consensus with min-energy shift (identical to the plain
// Gibbs average in exact arithmetic, underflow-safe for large beta).
Matrix gibbs_consensus(const std::vector<Matrix>& particles, const std::vector<double>& energies,
                       double beta);

// One Euler-Maruyama step with Hermitian anisotropic noise plus an additive
// exploration term; Hermiticity is exact at every step.
void hermitian_step(std::vector<Matrix>& particles, const Matrix& consensus,
                    const CboConfig& config, std::vector<RngStream>& rngs);

// Projection baseline: fully independent real entrywise noise, then
// symmetrization (H + H^dagger)/2.
void hermitian_projection_step(std::vector<Matrix>& particles, const Matrix& consensus,
                               const CboConfig& config, std::vector<RngStream>& rngs);

RunTrace run_hermitian(const SpectralDecomposition& decomp, int dim_a, int dim_b, int m, int j,
                       const CboConfig& config);

RunTrace run_hermitian_projection(const SpectralDecomposition& decomp, int dim_a, int dim_b, int m,
                                  int j, const CboConfig& config);

}  // namespace eofcbo::cbo_hermitian
