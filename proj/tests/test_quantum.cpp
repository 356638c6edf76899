#include <doctest.h>

#include "eofcbo/bench.hpp"
#include "eofcbo/cbo_hermitian.hpp"
#include "eofcbo/quantum.hpp"

using namespace eofcbo;
namespace qt = eofcbo::quantum;

namespace {

CVector bell_phi_plus() {
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v;
}

StiefelPoint random_stiefel(int m, int r, RngStream& rng) {
    return StiefelPoint{linalg::stiefel_from_hermitian(cbo_hermitian::gue_sample(m, rng), r)};
}

}  // namespace

TEST_CASE("validate_density: accepts valid states, names violations") {
    CHECK_NOTHROW(qt::validate_density(Matrix::Identity(4, 4) / 4.0, 2, 2));
    CHECK_NOTHROW(qt::validate_density(bell_phi_plus() * bell_phi_plus().adjoint(), 2, 2));

    CHECK_THROWS_AS(qt::validate_density(Matrix::Identity(4, 4) * 0.225, 2, 2), TraceError);

    Matrix nh = Matrix::Identity(4, 4) / 4.0;
    nh(0, 1) = Complex(0.1, 0.0);  // no mirror entry
    CHECK_THROWS_AS(qt::validate_density(nh, 2, 2), NotHermitianError);

    Matrix np = Matrix::Zero(4, 4);
    np(0, 0) = 1.5;
    np(1, 1) = -0.5;
    CHECK_THROWS_AS(qt::validate_density(np, 2, 2), NotPsdError);

    CHECK_THROWS_AS(qt::validate_density(Matrix::Identity(4, 4) / 4.0, 2, 3), DimensionError);
}

TEST_CASE("spectral_decompose: benchmark ranks") {
    CHECK(qt::spectral_decompose(bench::horodecki_2x2(0.3, 0.75)).rank == 2);
    CHECK(qt::spectral_decompose(bench::isotropic_3x3(0.5)).rank == 9);
    CHECK(qt::spectral_decompose(bench::horodecki_2x4(0.5)).rank == 5);

    // reconstruction and probability ordering
    const DensityMatrix dm = bench::werner(0.7);
    const SpectralDecomposition d = qt::spectral_decompose(dm);
    CHECK(d.rank == 4);
    const Matrix rebuilt = d.vectors * d.probabilities.asDiagonal() * d.vectors.adjoint();
    CHECK((rebuilt - dm.rho).norm() <= 1e-10);
    CHECK(std::abs(d.probabilities.sum() - 1.0) <= 1e-10);
    for (int k = 1; k < d.rank; ++k) CHECK(d.probabilities(k) <= d.probabilities(k - 1));
}

TEST_CASE("build_w: reconstruction and zero-row padding") {
    RngStream rng = make_stream(31, 0, 0);
    const DensityMatrix dm = bench::werner(0.7);
    const SpectralDecomposition d = qt::spectral_decompose(dm);

    // U = I_r gives W = Psi P^{1/2}
    const StiefelPoint identity{Matrix::Identity(d.rank, d.rank)};
    CHECK((qt::build_w(d, identity) - d.scaled_frame).norm() <= 1e-14);

    for (int rep = 0; rep < 10; ++rep) {
        const StiefelPoint u = random_stiefel(6, d.rank, rng);
        const Matrix w = qt::build_w(d, u);
        CHECK((w * w.adjoint() - dm.rho).norm() <= 1e-10);
        CHECK(std::abs((w * w.adjoint()).trace().real() - 1.0) <= 1e-10);
    }

    // appended zero rows produce zero columns of W
    const StiefelPoint u = random_stiefel(5, d.rank, rng);
    Matrix padded = Matrix::Zero(8, d.rank);
    padded.topRows(5) = u.frame;
    const Matrix w2 = qt::build_w(d, StiefelPoint{padded});
    CHECK(w2.rightCols(3).norm() <= 1e-14);

    CHECK_THROWS_AS(qt::build_w(d, StiefelPoint{Matrix::Identity(3, 3)}), DimensionError);
}

TEST_CASE("branch_decomposition: weights, drops, normalization") {
    Matrix w = Matrix::Zero(4, 2);
    w.col(0) = bell_phi_plus();
    const auto branches = qt::branch_decomposition(w);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].sigma == doctest::Approx(1.0));
    CHECK(std::abs(branches[0].phi.norm() - 1.0) <= 1e-12);

    RngStream rng = make_stream(37, 0, 0);
    const DensityMatrix dm = bench::werner(0.6);
    const SpectralDecomposition d = qt::spectral_decompose(dm);
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix wr = qt::build_w(d, random_stiefel(7, d.rank, rng));
        double total = 0.0;
        for (const auto& b : qt::branch_decomposition(wr)) total += b.sigma;
        CHECK(std::abs(total - 1.0) <= 1e-10);
    }
}

TEST_CASE("partial_trace_b: product, Bell, qutrit maximally entangled") {
    CVector prod = CVector::Zero(4);
    prod(0) = 1.0;
    const Matrix ra = qt::partial_trace_b(prod, 2, 2);
    CHECK(std::abs(ra(0, 0) - Complex(1, 0)) <= 1e-14);
    CHECK(std::abs(ra(1, 1)) <= 1e-14);

    CHECK((qt::partial_trace_b(bell_phi_plus(), 2, 2) - Matrix::Identity(2, 2) / 2.0).norm() <=
          1e-12);

    CVector psi3 = CVector::Zero(9);
    for (int i = 0; i < 3; ++i) psi3(i * 3 + i) = 1.0 / std::sqrt(3.0);
    CHECK((qt::partial_trace_b(psi3, 3, 3) - Matrix::Identity(3, 3) / 3.0).norm() <= 1e-12);

    CHECK_THROWS_AS(qt::partial_trace_b(2.0 * prod, 2, 2), ValidationError);
}

TEST_CASE("von_neumann_entropy: pure, maximally mixed, log2 3") {
    Matrix pure = Matrix::Zero(2, 2);
    pure(0, 0) = 1.0;
    CHECK(qt::von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(qt::von_neumann_entropy(Matrix::Identity(2, 2) / 2.0) == doctest::Approx(1.0));
    CHECK(qt::von_neumann_entropy(Matrix::Identity(3, 3) / 3.0) ==
          doctest::Approx(1.5849625007211562).epsilon(1e-12));
}

TEST_CASE("entanglement_objective: Bell value, padding invariance, bounds") {
    // rank-1 Bell projector with the 1x1 identity frame gives exactly 1 bit
    const DensityMatrix bell =
        qt::validate_density(bell_phi_plus() * bell_phi_plus().adjoint(), 2, 2);
    const SpectralDecomposition db = qt::spectral_decompose(bell);
    REQUIRE(db.rank == 1);
    const ObjectiveValue v = qt::entanglement_objective(db, StiefelPoint{Matrix::Ones(1, 1)}, 2, 2);
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-12));

    RngStream rng = make_stream(41, 0, 0);
    const DensityMatrix dm = bench::werner(0.8);
    const SpectralDecomposition d = qt::spectral_decompose(dm);
    for (int rep = 0; rep < 25; ++rep) {
        const StiefelPoint u = random_stiefel(6, d.rank, rng);
        const double base = qt::entanglement_objective(d, u, 2, 2).value;
        CHECK(base >= -1e-12);
        CHECK(base <= 1.0 + 1e-10);  // log2 min(2,2) = 1
        const int pad = 1 + rep % 5;
        Matrix padded = Matrix::Zero(6 + pad, d.rank);
        padded.topRows(6) = u.frame;
        const double padded_value = qt::entanglement_objective(d, StiefelPoint{padded}, 2, 2).value;
        CHECK(std::abs(base - padded_value) <= 1e-12);
    }
}

TEST_CASE("entanglement_objective: column permutation of W cannot change the value") {
    RngStream rng = make_stream(43, 0, 0);
    const DensityMatrix dm = bench::werner(0.7);
    const SpectralDecomposition d = qt::spectral_decompose(dm);
    const StiefelPoint u = random_stiefel(d.rank, d.rank, rng);
    const Matrix w = qt::build_w(d, u);

    auto value_of = [&](const Matrix& wm) {
        double total = 0.0;
        for (const auto& b : qt::branch_decomposition(wm))
            total += b.sigma * qt::von_neumann_entropy(qt::partial_trace_b(b.phi, 2, 2));
        return total;
    };
    Matrix perm = w;
    perm.col(0).swap(perm.col(2));
    perm.col(1).swap(perm.col(3));
    CHECK(std::abs(value_of(w) - value_of(perm)) <= 1e-12);
}

TEST_CASE("objective_value matches the full pipeline") {
    RngStream rng = make_stream(47, 0, 0);
    const DensityMatrix dm = bench::horodecki_2x4(0.5);
    const SpectralDecomposition d = qt::spectral_decompose(dm);
    for (int rep = 0; rep < 10; ++rep) {
        const StiefelPoint u = random_stiefel(7, d.rank, rng);
        const double fast = qt::objective_value(d, u.frame, 2, 4);
        const double full = qt::entanglement_objective(d, u, 2, 4).value;
        CHECK(std::abs(fast - full) <= 1e-13);
    }
}
