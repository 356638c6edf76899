#include "eofcbo/bench.hpp"

#include "eofcbo/cbo_hermitian.hpp"
#include "eofcbo/cbo_unitary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eofcbo::bench {

namespace {

constexpr double kLog2_3 = 1.584962500721156;  // log2(3)

CVector basis_2q(int a, int b) {
    CVector v = CVector::Zero(4);
    v(a * 2 + b) = 1.0;
    return v;
}

Matrix projector(const CVector& v) { return v * v.adjoint(); }

}  // namespace

DensityMatrix horodecki_2x2(double q, double a) {
    if (q <= 0.0 || q >= 1.0) throw ValidationError("horodecki_2x2: q must lie in (0,1)");
    if (a <= 0.0 || a >= 1.0) throw ValidationError("horodecki_2x2: a must lie in (0,1)");
    const double c = std::sqrt(1.0 - a * a);
    const CVector psi1 = a * basis_2q(0, 0) + c * basis_2q(1, 1);
    const CVector psi2 = a * basis_2q(1, 0) + c * basis_2q(0, 1);
    return quantum::validate_density(q * projector(psi1) + (1.0 - q) * projector(psi2), 2, 2);
}

DensityMatrix werner(double f) {
    if (f < 0.5 || f >= 1.0) throw ValidationError("werner: F must lie in [0.5, 1)");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const CVector phi_plus = inv_sqrt2 * (basis_2q(0, 0) + basis_2q(1, 1));
    const CVector phi_minus = inv_sqrt2 * (basis_2q(0, 0) - basis_2q(1, 1));
    const CVector psi_plus = inv_sqrt2 * (basis_2q(0, 1) + basis_2q(1, 0));
    const CVector psi_minus = inv_sqrt2 * (basis_2q(0, 1) - basis_2q(1, 0));
    const Matrix rho = f * projector(psi_minus) +
                       (1.0 - f) / 3.0 *
                           (projector(psi_plus) + projector(phi_minus) + projector(phi_plus));
    return quantum::validate_density(rho, 2, 2);
}

DensityMatrix isotropic_3x3(double f) {
    if (f <= 0.0 || f >= 1.0) throw ValidationError("isotropic_3x3: F must lie in (0,1)");
    CVector psi_plus = CVector::Zero(9);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    for (int i = 0; i < 3; ++i) psi_plus(i * 3 + i) = inv_sqrt3;
    const Matrix p = projector(psi_plus);
    const Matrix rho = (1.0 - f) / 8.0 * (Matrix::Identity(9, 9) - p) + f * p;
    return quantum::validate_density(rho, 3, 3);
}

DensityMatrix horodecki_2x4(double b) {
    if (b < 0.0 || b > 1.0) throw ValidationError("horodecki_2x4: b must lie in [0,1]");
    Matrix rho = Matrix::Zero(8, 8);
    // A = b I_4
    for (int i = 0; i < 4; ++i) rho(i, i) = b;
    // B: shift matrix scaled by b, placed as the off-diagonal block
    for (int i = 0; i < 3; ++i) {
        rho(i, 4 + i + 1) = b;
        rho(4 + i + 1, i) = b;
    }
    // C block
    const double d = (1.0 + b) / 2.0;
    const double s = std::sqrt(1.0 - b * b) / 2.0;
    rho(4, 4) = d;
    rho(5, 5) = b;
    rho(6, 6) = b;
    rho(7, 7) = d;
    rho(4, 7) = s;
    rho(7, 4) = s;
    rho /= (1.0 + 7.0 * b);
    return quantum::validate_density(rho, 2, 4);
}

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw ValidationError("binary_entropy: argument outside [0,1]");
    double s = 0.0;
    if (x > 0.0) s -= x * std::log2(x);
    if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
    return s;
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dim_a != 2 || rho.dim_b != 2)
        throw DimensionError("concurrence: defined for two-qubit states only");
    // sigma_y (x) sigma_y in the a*2+b basis
    Matrix yy = Matrix::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix rho_tilde = yy * rho.rho.conjugate() * yy;
    const Matrix root = linalg::psd_sqrt(rho.rho);
    Matrix inner = root * rho_tilde * root;
    inner = 0.5 * (inner + inner.adjoint());  // drop numerical asymmetry
    const Matrix r = linalg::psd_sqrt(inner);
    RealVector evals = linalg::hermitian_eigenvalues(r);  // ascending
    return std::max(0.0, evals(3) - evals(2) - evals(1) - evals(0));
}

OracleValue wootters_eof(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    const double value = binary_entropy(0.5 + 0.5 * std::sqrt(1.0 - c * c));
    return OracleValue{value, OracleKind::wootters};
}

OracleValue isotropic_eof(double f) {
    if (f <= 0.0 || f >= 1.0) throw ValidationError("isotropic_eof: F must lie in (0,1)");
    double value = 0.0;
    if (f > 8.0 / 9.0) {
        value = 3.0 * (f - 1.0) + kLog2_3;
    } else if (f > 1.0 / 3.0) {
        const double gamma = std::pow(std::sqrt(f) + std::sqrt(2.0 * (1.0 - f)), 2) / 3.0;
        value = binary_entropy(gamma) + 1.0 - gamma;
    }
    return OracleValue{value, OracleKind::isotropic_closed_form};
}

OracleValue simulated_annealing_reference(const SpectralDecomposition& decomp, int dim_a,
                                          int dim_b, int m, const SaConfig& sa,
                                          std::uint64_t seed) {
    // chi0 < chi_end is a legal degenerate schedule: the angle loop does no work
    if (sa.chi0 <= 0.0 || sa.chi_end <= 0.0)
        throw ValidationError("simulated_annealing_reference: angles must be positive");
    if (sa.alpha <= 0.0 || sa.alpha >= 1.0)
        throw ValidationError("simulated_annealing_reference: alpha must lie in (0,1)");
    if (m < decomp.rank) throw DimensionError("simulated_annealing_reference: M below rank");
    const int r = decomp.rank;

    double best = std::numeric_limits<double>::infinity();
    for (int real = 0; real < sa.realizations; ++real) {
        RngStream rng = make_stream(seed, 7771, real);
        Matrix u = linalg::stiefel_from_hermitian(cbo_hermitian::gue_sample(m, rng), r);
        double energy = quantum::objective_value(decomp, u, dim_a, dim_b);
        for (double chi = sa.chi0; chi >= sa.chi_end; chi *= sa.alpha) {
            for (int it = 0; it < sa.iter_per_angle; ++it) {
                Matrix z = cbo_unitary::skew_noise(m, rng);
                z *= chi / z.norm();
                const Matrix candidate = linalg::expm_skew_hermitian(z) * u;
                const double e = quantum::objective_value(decomp, candidate, dim_a, dim_b);
                if (e < energy) {
                    u = candidate;
                    energy = e;
                }
            }
        }
        best = std::min(best, energy);
    }
    return OracleValue{best, OracleKind::sa_reference};
}

}  // namespace eofcbo::bench
