#pragma once

#include <cstdint>

#include "eofcbo/quantum.hpp"
#include "eofcbo/rng.hpp"

namespace eofcbo::bench {

enum class OracleKind { wootters, isotropic_closed_form, sa_reference };

struct OracleValue {
    double value = 0.0;
    OracleKind kind = OracleKind::wootters;
};

// Simulated-annealing reference parameters (rejection sampling with a shrinking
// proposal angle).
struct SaConfig {
    double chi0 = 0.3;
    double chi_end = 1e-4;
    double alpha = 2.0 / 3.0;
    int iter_per_angle = 1000;
    int realizations = 20;
};

// Benchmark states -----------------------------------------------------------

// q |Psi1><Psi1| + (1-q) |Psi2><Psi2| with Psi1 = a|00> + sqrt(1-a^2)|11>,
// Psi2 = a|10> + sqrt(1-a^2)|01>. Rank 2.
DensityMatrix horodecki_2x2(double q, double a);

// F |psi-><psi-| + (1-F)/3 (other three Bell projectors), F in [0.5, 1).
DensityMatrix werner(double f);

// (1-F)/8 (I - |Psi+><Psi+|) + F |Psi+><Psi+| with Psi+ = sum |ii>/sqrt(3).
DensityMatrix isotropic_3x3(double f);

// The 2x4 PPT family; separable at b = 0 and b = 1, entangled PPT inside.
DensityMatrix horodecki_2x4(double b);

// Oracles ---------------------------------------------------------------------

double binary_entropy(double x);

// Two-qubit concurrence max(0, l1 - l2 - l3 - l4) from the spin-flipped matrix.
double concurrence(const DensityMatrix& rho);

OracleValue wootters_eof(const DensityMatrix& rho);

// Closed form for the 3x3 isotropic family, piecewise in the fidelity.
OracleValue isotropic_eof(double f);

// Zero-temperature rejection baseline: random skew-Hermitian proposals of
// Frobenius-normalized angle chi, accepted only when the objective decreases;
// chi shrinks by alpha per stage. Returns the minimum over realizations.
OracleValue simulated_annealing_reference(const SpectralDecomposition& decomp, int dim_a,
                                          int dim_b, int m, const SaConfig& sa,
                                          std::uint64_t seed);

}  // namespace eofcbo::bench
