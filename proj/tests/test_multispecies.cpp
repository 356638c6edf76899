#include <doctest.h>

#include "eofcbo/bench.hpp"
#include "eofcbo/cbo_hermitian.hpp"
#include "eofcbo/multispecies.hpp"

using namespace eofcbo;
namespace ms = eofcbo::multispecies;
namespace ch = eofcbo::cbo_hermitian;

TEST_CASE("embed: identity, 1x1 pad, structure") {
    RngStream rng = make_stream(201, 0, 0);
    const Matrix h = ch::gue_sample(4, rng);
    CHECK((ms::embed(h, 4) - h).norm() == 0.0);

    Matrix one(1, 1);
    one(0, 0) = 1.0;
    const Matrix padded = ms::embed(one, 2);
    CHECK(std::abs(padded(0, 0) - Complex(1, 0)) == 0.0);
    CHECK(std::abs(padded(0, 1)) == 0.0);
    CHECK(std::abs(padded(1, 1)) == 0.0);

    const Matrix big = ms::embed(h, 7);
    CHECK(big.rows() == 7);
    CHECK((big.topLeftCorner(4, 4) - h).norm() == 0.0);
    CHECK(big.bottomRows(3).norm() == 0.0);
    CHECK(big.rightCols(3).norm() == 0.0);
    CHECK((big - big.adjoint()).norm() == 0.0);

    CHECK_THROWS_AS(ms::embed(h, 3), DimensionError);
}

TEST_CASE("truncate: forced norm ordering keeps the right indices") {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const Matrix t = ms::truncate(d, 2);
    REQUIRE(t.rows() == 2);
    CHECK(std::abs(t(0, 0) - Complex(3, 0)) == 0.0);
    CHECK(std::abs(t(1, 1) - Complex(2, 0)) == 0.0);
    CHECK(std::abs(t(0, 1)) == 0.0);

    RngStream rng = make_stream(203, 0, 0);
    const Matrix h = ch::gue_sample(5, rng);
    CHECK((ms::truncate(h, 5) - h).norm() == 0.0);
    CHECK_THROWS_AS(ms::truncate(h, 6), DimensionError);
}

TEST_CASE("truncate: ties broken toward the lower index") {
    // two columns of identical norm; the kept index must be the lower one
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 2.0;
    d(1, 1) = 1.0;
    d(2, 2) = 1.0;
    const Matrix t = ms::truncate(d, 2);
    CHECK(std::abs(t(0, 0) - Complex(2, 0)) == 0.0);
    CHECK(std::abs(t(1, 1) - Complex(1, 0)) == 0.0);
}

TEST_CASE("round trip truncate(embed(H)) = H over 1000 random instances") {
    RngStream rng = make_stream(207, 0, 0);
    std::uniform_int_distribution<int> small(1, 8), pad(0, 6);
    for (int rep = 0; rep < 1000; ++rep) {
        const int m1 = small(rng.engine());
        const int m2 = m1 + pad(rng.engine());
        const Matrix h = ch::gue_sample(m1, rng);
        const Matrix back = ms::truncate(ms::embed(h, m2), m1);
        REQUIRE((back - h).norm() == 0.0);
    }
}

TEST_CASE("embed leaves the objective invariant") {
    RngStream rng = make_stream(211, 0, 0);
    const SpectralDecomposition d = quantum::spectral_decompose(bench::werner(0.7));
    for (int rep = 0; rep < 50; ++rep) {
        const Matrix h = ch::gue_sample(5, rng);
        const double base =
            quantum::objective_value(d, linalg::stiefel_from_hermitian(h, d.rank), 2, 2);
        const double padded = quantum::objective_value(
            d, linalg::stiefel_from_hermitian(ms::embed(h, 9), d.rank), 2, 2);
        CHECK(std::abs(base - padded) <= 1e-12);
    }
}

TEST_CASE("cross_consensus: one level reduces to gibbs_consensus") {
    RngStream rng = make_stream(213, 0, 0);
    std::vector<Matrix> particles{ch::gue_sample(4, rng), ch::gue_sample(4, rng),
                                  ch::gue_sample(4, rng)};
    const std::vector<double> energies{0.4, 0.1, 0.9};
    const Matrix plain = ch::gibbs_consensus(particles, energies, 200.0);
    const Matrix cross = ms::cross_consensus({particles}, {energies}, 200.0, 4);
    CHECK((plain - cross).norm() <= 1e-14);
}

TEST_CASE("cross_consensus: uniform energies average all resized particles") {
    RngStream rng = make_stream(217, 0, 0);
    const Matrix h2 = ch::gue_sample(2, rng);
    const Matrix h3 = ch::gue_sample(3, rng);
    const Matrix avg = ms::cross_consensus({{h2}, {h3}}, {{0.5}, {0.5}}, 200.0, 3);
    CHECK((avg - 0.5 * (ms::embed(h2, 3) + h3)).norm() <= 1e-14);
}

TEST_CASE("cross_consensus: dominant particle wins across levels") {
    RngStream rng = make_stream(219, 0, 0);
    const Matrix h2 = ch::gue_sample(2, rng);
    const Matrix h3 = ch::gue_sample(3, rng);
    const Matrix dom = ms::cross_consensus({{h2}, {h3}}, {{10.0}, {0.0}}, 200.0, 3);
    CHECK((dom - h3).norm() <= 1e-12 * (ms::embed(h2, 3) - h3).norm());
    CHECK_THROWS_AS(ms::cross_consensus({}, {}, 200.0, 3), ValidationError);
}

TEST_CASE("run_multispecies: single level replays run_hermitian bitwise") {
    const SpectralDecomposition d = quantum::spectral_decompose(bench::werner(0.7));
    CboConfig cfg;
    cfg.max_iter = 15;
    cfg.seed = 77;

    const RunTrace single = ch::run_hermitian(d, 2, 2, 5, 6, cfg);
    const auto multi = ms::run_multispecies(d, 2, 2, {5}, 6, cfg);
    REQUIRE(multi.size() == 1);
    const RunTrace& level = multi.at(5);
    REQUIRE(level.records.size() == single.records.size());
    CHECK(level.best_eof == single.best_eof);
    CHECK(level.best_iter == single.best_iter);
    CHECK((level.best_consensus_frame - single.best_consensus_frame).norm() == 0.0);
    for (std::size_t k = 0; k < level.records.size(); ++k) {
        CHECK(level.records[k].consensus_eof == single.records[k].consensus_eof);
        CHECK(level.records[k].ensemble_min == single.records[k].ensemble_min);
        CHECK(level.records[k].ensemble_mean == single.records[k].ensemble_mean);
    }
}

TEST_CASE("run_multispecies: per-level traces, determinism, Hermiticity of results") {
    const SpectralDecomposition d = quantum::spectral_decompose(bench::werner(0.7));
    CboConfig cfg;
    cfg.max_iter = 10;
    cfg.seed = 21;

    const auto a = ms::run_multispecies(d, 2, 2, {4, 5, 6}, 5, cfg);
    const auto b = ms::run_multispecies(d, 2, 2, {4, 5, 6}, 5, cfg);
    REQUIRE(a.size() == 3);
    for (int m : {4, 5, 6}) {
        const RunTrace& ta = a.at(m);
        const RunTrace& tb = b.at(m);
        REQUIRE(ta.records.size() == 10);
        CHECK(ta.best_eof == tb.best_eof);
        CHECK((ta.best_consensus_frame - tb.best_consensus_frame).norm() == 0.0);
        CHECK(ta.best_consensus_frame.rows() == m);
        CHECK(ta.best_consensus_frame.cols() == d.rank);
        double lowest = ta.records.front().consensus_eof;
        for (const auto& r : ta.records) lowest = std::min(lowest, r.consensus_eof);
        CHECK(ta.best_eof == lowest);
    }
}

TEST_CASE("run_multispecies: level set validation") {
    const SpectralDecomposition d = quantum::spectral_decompose(bench::werner(0.7));
    CboConfig cfg;
    cfg.max_iter = 1;
    CHECK_THROWS_AS(ms::run_multispecies(d, 2, 2, {}, 4, cfg), ValidationError);
    CHECK_THROWS_AS(ms::run_multispecies(d, 2, 2, {3}, 4, cfg), DimensionError);
    CHECK_THROWS_AS(ms::run_multispecies(d, 2, 2, {17}, 4, cfg), DimensionError);
}
