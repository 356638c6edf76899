#include <doctest.h>

#include "eofcbo/cbo_hermitian.hpp"
#include "eofcbo/linalg.hpp"
#include "eofcbo/rng.hpp"

using namespace eofcbo;
namespace la = eofcbo::linalg;

TEST_CASE("hermitian_eig: identity and diagonal") {
    const auto eig_id = la::hermitian_eig(Matrix::Identity(2, 2));
    CHECK(eig_id.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(eig_id.eigenvalues(1) == doctest::Approx(1.0));

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    const auto eig_d = la::hermitian_eig(d);
    CHECK(eig_d.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(eig_d.eigenvalues(1) == doctest::Approx(3.0));
}

TEST_CASE("hermitian_eig: GUE reconstruction residual") {
    RngStream rng = make_stream(11, 0, 0);
    for (int m : {2, 5, 12, 18}) {
        const Matrix h = cbo_hermitian::gue_sample(m, rng);
        const auto eig = la::hermitian_eig(h);
        const Matrix rebuilt =
            eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
        CHECK((rebuilt - h).norm() <= 1e-10 * std::max(1.0, h.norm()));
        CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - Matrix::Identity(m, m)).norm() <=
              1e-10);
        for (int k = 1; k < m; ++k) CHECK(eig.eigenvalues(k) >= eig.eigenvalues(k - 1));
    }
}

TEST_CASE("hermitian_eig: non-finite input rejected") {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 1) = Complex(std::nan(""), 0.0);
    h(1, 0) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(la::hermitian_eig(h), ValidationError);
}

TEST_CASE("expm_i_hermitian: zero and diagonal cases") {
    CHECK((la::expm_i_hermitian(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() <= 1e-14);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = M_PI;
    const Matrix e = la::expm_i_hermitian(d);
    CHECK(std::abs(e(0, 0) - Complex(-1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(e(1, 1) - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(e(0, 1)) <= 1e-12);
}

TEST_CASE("expm_i_hermitian: unitary on random GUE") {
    RngStream rng = make_stream(7, 0, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix h = cbo_hermitian::gue_sample(8, rng);
        const Matrix u = la::expm_i_hermitian(h);
        CHECK((u.adjoint() * u - Matrix::Identity(8, 8)).norm() <= 1e-10);
    }
}

TEST_CASE("expm_skew_hermitian: rotation generator and inverse pairing") {
    Matrix a = Matrix::Zero(2, 2);
    const double theta = 0.37;
    a(0, 1) = theta;
    a(1, 0) = -theta;
    const Matrix e = la::expm_skew_hermitian(a);
    CHECK(std::abs(e(0, 0) - Complex(std::cos(theta), 0.0)) <= 1e-12);
    CHECK(std::abs(e(0, 1) - Complex(std::sin(theta), 0.0)) <= 1e-12);

    CHECK((la::expm_skew_hermitian(Matrix::Zero(4, 4)) - Matrix::Identity(4, 4)).norm() <= 1e-14);

    RngStream rng = make_stream(5, 0, 0);
    const Matrix h = cbo_hermitian::gue_sample(6, rng);
    const Matrix skew = Complex(0.0, 1.0) * h;
    CHECK((la::expm_skew_hermitian(skew) * la::expm_skew_hermitian(Matrix(-skew)) -
           Matrix::Identity(6, 6))
              .norm() <= 1e-10);
}

TEST_CASE("expm_skew_hermitian: rejects non-skew input") {
    Matrix a = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(la::expm_skew_hermitian(a), StructureError);
}

TEST_CASE("expm additivity for commuting diagonal imaginary matrices") {
    Matrix a = Matrix::Zero(3, 3), b = Matrix::Zero(3, 3);
    a.diagonal() << Complex(0, 0.3), Complex(0, -1.1), Complex(0, 2.0);
    b.diagonal() << Complex(0, 0.5), Complex(0, 0.25), Complex(0, -0.75);
    const Matrix lhs = la::expm_skew_hermitian(Matrix(a + b));
    const Matrix rhs = la::expm_skew_hermitian(a) * la::expm_skew_hermitian(b);
    CHECK((lhs - rhs).norm() <= 1e-10);
}

TEST_CASE("psd_sqrt: diagonal, identity, and random Gram matrix") {
    CHECK((la::psd_sqrt(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)).norm() <= 1e-12);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const Matrix root = la::psd_sqrt(d);
    CHECK(std::abs(root(0, 0).real() - 2.0) <= 1e-12);
    CHECK(std::abs(root(1, 1).real() - 3.0) <= 1e-12);

    RngStream rng = make_stream(3, 0, 0);
    const Matrix a = cbo_hermitian::gue_sample(5, rng);
    const Matrix gram = a.adjoint() * a;
    const Matrix r = la::psd_sqrt(gram);
    CHECK((r * r - gram).norm() <= 1e-8 * std::max(1.0, gram.norm()));

    Matrix neg = Matrix::Identity(2, 2);
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(la::psd_sqrt(neg), NotPsdError);
}

TEST_CASE("gram_schmidt: fixed point, normalization, residual, idempotence") {
    Matrix e = Matrix::Zero(2, 1);
    e(0, 0) = 2.0;
    const StiefelPoint n = la::gram_schmidt(e);
    CHECK(std::abs(n.frame(0, 0) - Complex(1.0, 0.0)) <= 1e-15);

    RngStream rng = make_stream(9, 0, 0);
    Matrix random(8, 3);
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 8; ++r) random(r, c) = Complex(rng.normal(), rng.normal());
    const StiefelPoint q = la::gram_schmidt(random);
    CHECK(q.orthonormality_residual() <= 1e-12);
    // fixed point / idempotence
    const StiefelPoint q2 = la::gram_schmidt(q.frame);
    CHECK((q2.frame - q.frame).norm() <= 1e-12);

    Matrix dep(4, 2);
    dep.col(0).setOnes();
    dep.col(1) = dep.col(0) * 2.0;
    CHECK_THROWS_AS(la::gram_schmidt(dep), RankDeficientError);
}

TEST_CASE("first_r_columns: slices and validates") {
    const StiefelPoint s = la::first_r_columns(Matrix::Identity(3, 3), 2);
    CHECK(s.frame_dim() == 2);
    CHECK(std::abs(s.frame(0, 0) - Complex(1, 0)) <= 1e-15);

    RngStream rng = make_stream(13, 0, 0);
    const Matrix u = la::expm_i_hermitian(cbo_hermitian::gue_sample(6, rng));
    CHECK(la::first_r_columns(u, 2).orthonormality_residual() <= 1e-12);
    CHECK((la::first_r_columns(u, 6).frame - u).norm() == 0.0);
    CHECK_THROWS_AS(la::first_r_columns(u, 7), DimensionError);
    CHECK_THROWS_AS(la::first_r_columns(Matrix::Ones(3, 3), 2), StructureError);
}

TEST_CASE("hermitian_eig: 1000-sample reconstruction property") {
    RngStream rng = make_stream(23, 0, 0);
    std::uniform_int_distribution<int> dims(2, 18);
    for (int rep = 0; rep < 1000; ++rep) {
        const int m = dims(rng.engine());
        const Matrix h = cbo_hermitian::gue_sample(m, rng);
        const auto eig = la::hermitian_eig(h);
        const Matrix rebuilt =
            eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
        REQUIRE((rebuilt - h).norm() <= 1e-10 * std::max(1.0, h.norm()));
    }
}

TEST_CASE("stiefel_from_hermitian matches the two-step construction") {
    RngStream rng = make_stream(17, 0, 0);
    const Matrix h = cbo_hermitian::gue_sample(7, rng);
    const Matrix direct = la::stiefel_from_hermitian(h, 3);
    const Matrix full = la::expm_i_hermitian(h);
    CHECK((direct - full.leftCols(3)).norm() <= 1e-12);
    CHECK(StiefelPoint{direct}.orthonormality_residual() <= 1e-12);
}
