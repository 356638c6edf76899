#include "eofcbo/cbo_hermitian.hpp"

#include <cmath>
#include <limits>

namespace eofcbo::cbo_hermitian {

Matrix gue_sample(int m, RngStream& rng) {
    Matrix h(m, m);
    for (int d = 0; d < m; ++d) {
        const double re = rng.normal();
        rng.normal();  // imaginary part of A's diagonal cancels in (A+A^dagger)/2
        h(d, d) = Complex(re, 0.0);
    }
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < c; ++r) {
            // (A_{rc} + conj(A_{cr}))/2 with four independent normals
            const double re = (rng.normal() + rng.normal()) * 0.5;
            const double im = (rng.normal() - rng.normal()) * 0.5;
            h(r, c) = Complex(re, im);
            h(c, r) = Complex(re, -im);
        }
    return h;
}

Matrix hermitian_noise(int m, RngStream& rng) {
    Matrix z(m, m);
    for (int d = 0; d < m; ++d) z(d, d) = Complex(rng.normal(), 0.0);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < c; ++r) {
            const double y1 = rng.normal();
            const double y2 = rng.normal();
            z(r, c) = Complex(y1, y2);
            z(c, r) = Complex(y1, -y2);
        }
    return z;
}

Matrix gibbs_consensus(const std::vector<Matrix>& particles, const std::vector<double>& energies,
                       double beta) {
    if (particles.empty()) throw ValidationError("gibbs_consensus: empty ensemble");
    if (particles.size() != energies.size())
        throw DimensionError("gibbs_consensus: one energy per particle required");
    double emin = std::numeric_limits<double>::infinity();
    for (double e : energies) {
        if (!std::isfinite(e)) throw ValidationError("gibbs_consensus: non-finite energy");
        emin = std::min(emin, e);
    }
    Matrix acc = Matrix::Zero(particles[0].rows(), particles[0].cols());
    double total = 0.0;
    for (std::size_t j = 0; j < particles.size(); ++j) {
        const double w = std::exp(-beta * (energies[j] - emin));
        acc += w * particles[j];
        total += w;
    }
    return acc / total;
}

void hermitian_step(std::vector<Matrix>& particles, const Matrix& consensus,
                    const CboConfig& config, std::vector<RngStream>& rngs) {
    const int m = static_cast<int>(consensus.rows());
    const double drift = config.lambda * config.dt;
    const double diffusion = config.sigma * std::sqrt(config.dt);
    const double additive = config.additive_sigma * std::sqrt(config.dt);
    for (std::size_t j = 0; j < particles.size(); ++j) {
        const Matrix diff = particles[j] - consensus;
        const Matrix z = hermitian_noise(m, rngs[j]);
        const Matrix zt = hermitian_noise(m, rngs[j]);
        // Entrywise product of two Hermitian matrices is Hermitian (conjugate
        // pairs multiply to conjugate pairs), so the update is exact.
        particles[j] += -drift * diff + diffusion * diff.cwiseProduct(z) + additive * zt;
    }
}

void hermitian_projection_step(std::vector<Matrix>& particles, const Matrix& consensus,
                               const CboConfig& config, std::vector<RngStream>& rngs) {
    const int m = static_cast<int>(consensus.rows());
    const double drift = config.lambda * config.dt;
    const double diffusion = config.sigma * std::sqrt(config.dt);
    const double additive = config.additive_sigma * std::sqrt(config.dt);
    for (std::size_t j = 0; j < particles.size(); ++j) {
        const Matrix diff = particles[j] - consensus;
        Matrix z(m, m), zt(m, m);
        for (int c = 0; c < m; ++c)
            for (int r = 0; r < m; ++r) z(r, c) = Complex(rngs[j].normal(), 0.0);
        for (int c = 0; c < m; ++c)
            for (int r = 0; r < m; ++r) zt(r, c) = Complex(rngs[j].normal(), 0.0);
        const Matrix half =
            particles[j] - drift * diff + diffusion * diff.cwiseProduct(z) + additive * zt;
        particles[j] = 0.5 * (half + half.adjoint());
    }
}

namespace {

using StepFn = void (*)(std::vector<Matrix>&, const Matrix&, const CboConfig&,
                        std::vector<RngStream>&);

RunTrace run_loop(const SpectralDecomposition& decomp, int dim_a, int dim_b, int m, int j,
                  const CboConfig& config, StepFn step) {
    const int n = dim_a * dim_b;
    if (m < decomp.rank || m > n * n)
        throw DimensionError("run_hermitian: M must lie in [rank, N^2]");
    if (j < 1) throw ValidationError("run_hermitian: need at least one particle");

    std::vector<RngStream> rngs;
    rngs.reserve(j);
    for (int p = 0; p < j; ++p) rngs.push_back(make_stream(config.seed, 0, p));

    std::vector<Matrix> particles;
    particles.reserve(j);
    for (int p = 0; p < j; ++p) particles.push_back(gue_sample(m, rngs[p]));

    std::vector<double> energies(j);
    auto evaluate = [&] {
        for (int p = 0; p < j; ++p)
            energies[p] = quantum::objective_value(
                decomp, linalg::stiefel_from_hermitian(particles[p], decomp.rank), dim_a, dim_b);
    };

    RunTrace trace;
    evaluate();
    Matrix consensus = gibbs_consensus(particles, energies, config.beta);
    Matrix cframe = linalg::stiefel_from_hermitian(consensus, decomp.rank);
    double ce = quantum::objective_value(decomp, cframe, dim_a, dim_b);
    if (config.max_iter == 0) {
        trace.best_eof = ce;
        trace.best_iter = 0;
        trace.best_consensus_frame = cframe;
        return trace;
    }

    trace.best_eof = std::numeric_limits<double>::infinity();
    trace.records.reserve(config.max_iter);
    for (int k = 1; k <= config.max_iter; ++k) {
        step(particles, consensus, config, rngs);
        evaluate();
        consensus = gibbs_consensus(particles, energies, config.beta);
        cframe = linalg::stiefel_from_hermitian(consensus, decomp.rank);
        ce = quantum::objective_value(decomp, cframe, dim_a, dim_b);

        double emin = energies[0], esum = 0.0;
        for (double e : energies) {
            emin = std::min(emin, e);
            esum += e;
        }
        trace.records.push_back(TraceRecord{k, ce, emin, esum / j});
        if (ce < trace.best_eof) {
            trace.best_eof = ce;
            trace.best_iter = k;
            trace.best_consensus_frame = cframe;
        }
    }
    return trace;
}

}  // namespace

RunTrace run_hermitian(const SpectralDecomposition& decomp, int dim_a, int dim_b, int m, int j,
                       const CboConfig& config) {
    return run_loop(decomp, dim_a, dim_b, m, j, config, &hermitian_step);
}

RunTrace run_hermitian_projection(const SpectralDecomposition& decomp, int dim_a, int dim_b, int m,
                                  int j, const CboConfig& config) {
    return run_loop(decomp, dim_a, dim_b, m, j, config, &hermitian_projection_step);
}

}  // namespace eofcbo::cbo_hermitian
