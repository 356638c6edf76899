#include "eofcbo/cbo_unitary.hpp"

#include "eofcbo/cbo_hermitian.hpp"

#include <cmath>
#include <limits>

namespace eofcbo::cbo_unitary {

Matrix skew_noise(int m, RngStream& rng) {
    Matrix z(m, m);
    for (int d = 0; d < m; ++d) z(d, d) = Complex(0.0, rng.normal());
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < c; ++r) {
            const double y1 = rng.normal();
            const double y2 = rng.normal();
            z(r, c) = Complex(y1, y2);
            z(c, r) = Complex(-y1, y2);
        }
    return z;
}

std::size_t argmin_consensus(const std::vector<double>& energies) {
    if (energies.empty()) throw ValidationError("argmin_consensus: empty ensemble");
    std::size_t best = 0;
    for (std::size_t j = 1; j < energies.size(); ++j) {
        if (!std::isfinite(energies[j])) throw ValidationError("argmin_consensus: non-finite energy");
        if (energies[j] < energies[best]) best = j;
    }
    return best;
}

void unitary_step(std::vector<Matrix>& particles, const Matrix& consensus,
                  const CboConfig& config, std::vector<RngStream>& rngs) {
    const int m = static_cast<int>(consensus.rows());
    const double drift = config.lambda * config.dt;
    const double diffusion = config.sigma * std::sqrt(config.dt);
    const double additive = config.additive_sigma * std::sqrt(config.dt);
    for (std::size_t j = 0; j < particles.size(); ++j) {
        const Matrix cross = consensus * particles[j].adjoint();
        Matrix exponent = drift * (cross - cross.adjoint());
        exponent += diffusion * skew_noise(m, rngs[j]);
        exponent += additive * skew_noise(m, rngs[j]);
        particles[j] = linalg::expm_skew_hermitian(exponent) * particles[j];
    }
}

std::vector<double> drift_consensus_check(const Matrix& u0, const Matrix& ubar, double lambda,
                                          double dt, int steps) {
    Matrix u = u0;
    std::vector<double> distances;
    distances.reserve(steps + 1);
    distances.push_back((u - ubar).norm());
    for (int k = 0; k < steps; ++k) {
        const Matrix cross = ubar * u.adjoint();
        u = linalg::expm_skew_hermitian(lambda * dt * (cross - cross.adjoint())) * u;
        distances.push_back((u - ubar).norm());
    }
    return distances;
}

namespace {

RunTrace run_loop(const SpectralDecomposition& decomp, int dim_a, int dim_b, int m, int j,
                  const CboConfig& config, bool projection) {
    const int n = dim_a * dim_b;
    if (m < decomp.rank || m > n * n)
        throw DimensionError("run_unitary: M must lie in [rank, N^2]");
    if (j < 1) throw ValidationError("run_unitary: need at least one particle");
    const int r = decomp.rank;

    std::vector<RngStream> rngs;
    rngs.reserve(j);
    for (int p = 0; p < j; ++p) rngs.push_back(make_stream(config.seed, 0, p));

    std::vector<Matrix> particles;
    particles.reserve(j);
    for (int p = 0; p < j; ++p)
        particles.push_back(
            linalg::stiefel_from_hermitian(cbo_hermitian::gue_sample(m, rngs[p]), r));

    std::vector<double> energies(j);
    auto evaluate = [&] {
        for (int p = 0; p < j; ++p)
            energies[p] = quantum::objective_value(decomp, particles[p], dim_a, dim_b);
    };

    RunTrace trace;
    Matrix consensus;
    double ce = 0.0;

    auto compute_consensus = [&] {
        if (!projection) {
            const std::size_t idx = argmin_consensus(energies);
            consensus = particles[idx];
            ce = energies[idx];
        } else {
            consensus =
                cbo_hermitian::gibbs_consensus(particles, energies, config.beta);
            consensus = linalg::gram_schmidt(consensus).frame;
            ce = quantum::objective_value(decomp, consensus, dim_a, dim_b);
        }
    };

    auto step = [&] {
        if (!projection) {
            unitary_step(particles, consensus, config, rngs);
            return;
        }
        const double drift = config.lambda * config.dt;
        const double diffusion = config.sigma * std::sqrt(config.dt);
        const double additive = config.additive_sigma * std::sqrt(config.dt);
        for (int p = 0; p < j; ++p) {
            const Matrix diff = particles[p] - consensus;
            for (int attempt = 0;; ++attempt) {
                Matrix z(m, r), zt(m, r);
                for (int c = 0; c < r; ++c)
                    for (int row = 0; row < m; ++row) z(row, c) = Complex(rngs[p].normal(), 0.0);
                for (int c = 0; c < r; ++c)
                    for (int row = 0; row < m; ++row) zt(row, c) = Complex(rngs[p].normal(), 0.0);
                const Matrix half =
                    particles[p] - drift * diff + diffusion * diff.cwiseProduct(z) + additive * zt;
                try {
                    particles[p] = linalg::gram_schmidt(half).frame;
                    break;
                } catch (const RankDeficientError&) {
                    if (attempt >= 9) throw;
                }
            }
        }
    };

    evaluate();
    compute_consensus();
    if (config.max_iter == 0) {
        trace.best_eof = ce;
        trace.best_iter = 0;
        trace.best_consensus_frame = consensus;
        return trace;
    }

    trace.best_eof = std::numeric_limits<double>::infinity();
    trace.records.reserve(config.max_iter);
    for (int k = 1; k <= config.max_iter; ++k) {
        step();
        evaluate();
        compute_consensus();

        double emin = energies[0], esum = 0.0;
        for (double e : energies) {
            emin = std::min(emin, e);
            esum += e;
        }
        trace.records.push_back(TraceRecord{k, ce, emin, esum / j});
        if (ce < trace.best_eof) {
            trace.best_eof = ce;
            trace.best_iter = k;
            trace.best_consensus_frame = consensus;
        }
    }
    return trace;
}

}  // namespace

RunTrace run_unitary(const SpectralDecomposition& decomp, int dim_a, int dim_b, int m, int j,
                     const CboConfig& config) {
    return run_loop(decomp, dim_a, dim_b, m, j, config, false);
}

RunTrace run_unitary_projection(const SpectralDecomposition& decomp, int dim_a, int dim_b, int m,
                                int j, const CboConfig& config) {
    return run_loop(decomp, dim_a, dim_b, m, j, config, true);
}

}  // namespace eofcbo::cbo_unitary
