#pragma once

#include <vector>

#include "eofcbo/cbo.hpp"
#include "eofcbo/quantum.hpp"
#include "eofcbo/rng.hpp"

namespace eofcbo::cbo_unitary {

// Skew-Hermitian noise: purely imaginary diagonal, Z[m1][m2] = Y1 + i Y2 above
// the diagonal and -Y1 + i Y2 below; Z^dagger = -Z exactly.
Matrix skew_noise(int m, RngStream& rng);

// Index of the particle with minimal energy; ties broken by lowest index.
std::size_t argmin_consensus(const std::vector<double>& energies);

// Exponential-integrator step: U <- exp(lambda dt (Ubar U^d - U Ubar^d)
// + sigma sqrt(dt) Z + additive sqrt(dt) Zt) U. Stays on the Stiefel manifold.
void unitary_step(std::vector<Matrix>& particles, const Matrix& consensus,
                  const CboConfig& config, std::vector<RngStream>& rngs);

// Drift-only iteration toward a fixed consensus; returns ||U^k - Ubar||_F per
// step (including the initial distance).
std::vector<double> drift_consensus_check(const Matrix& u0, const Matrix& ubar, double lambda,
                                          double dt, int steps);

RunTrace run_unitary(const SpectralDecomposition& decomp, int dim_a, int dim_b, int m, int j,
                     const CboConfig& config);

// Projection baseline: ambient Euler-Maruyama with entrywise noise, then
// Gram-Schmidt; Gibbs-averaged consensus followed by Gram-Schmidt.
RunTrace run_unitary_projection(const SpectralDecomposition& decomp, int dim_a, int dim_b, int m,
                                int j, const CboConfig& config);

}  // namespace eofcbo::cbo_unitary
