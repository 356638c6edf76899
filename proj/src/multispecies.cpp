#include "eofcbo/multispecies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace eofcbo::multispecies {

Matrix embed(const Matrix& h, int m2) {
    const int m1 = static_cast<int>(h.rows());
    if (m2 < m1) throw DimensionError("embed: target dimension smaller than input");
    if (m2 == m1) return h;
    Matrix out = Matrix::Zero(m2, m2);
    out.topLeftCorner(m1, m1) = h;
    return out;
}

Matrix truncate(const Matrix& h, int m1) {
    const int m2 = static_cast<int>(h.rows());
    if (m1 > m2) throw DimensionError("truncate: target dimension larger than input");
    if (m1 == m2) return h;
    std::vector<int> order(m2);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> norms(m2);
    for (int c = 0; c < m2; ++c) norms[c] = h.col(c).norm();
    // stable sort keeps the lower index first on ties
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return norms[a] > norms[b]; });
    order.resize(m1);
    std::sort(order.begin(), order.end());
    Matrix out(m1, m1);
    for (int q = 0; q < m1; ++q)
        for (int p = 0; p < m1; ++p) out(p, q) = h(order[p], order[q]);
    return out;
}

Matrix resize(const Matrix& h, int target_m) {
    const int m = static_cast<int>(h.rows());
    if (target_m >= m) return embed(h, target_m);
    return truncate(h, target_m);
}

Matrix cross_consensus(const std::vector<std::vector<Matrix>>& levels,
                       const std::vector<std::vector<double>>& energies, double beta,
                       int target_m) {
    if (levels.empty()) throw ValidationError("cross_consensus: empty species set");
    if (levels.size() != energies.size())
        throw DimensionError("cross_consensus: one energy vector per level required");
    double emin = std::numeric_limits<double>::infinity();
    for (const auto& level : energies)
        for (double e : level) {
            if (!std::isfinite(e)) throw ValidationError("cross_consensus: non-finite energy");
            emin = std::min(emin, e);
        }
    Matrix acc = Matrix::Zero(target_m, target_m);
    double total = 0.0;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        if (levels[l].size() != energies[l].size())
            throw DimensionError("cross_consensus: energies/particles mismatch");
        for (std::size_t j = 0; j < levels[l].size(); ++j) {
            const double w = std::exp(-beta * (energies[l][j] - emin));
            acc += w * resize(levels[l][j], target_m);
            total += w;
        }
    }
    return acc / total;
}

std::map<int, RunTrace> run_multispecies(const SpectralDecomposition& decomp, int dim_a, int dim_b,
                                         const std::vector<int>& level_set, int j,
                                         const CboConfig& config) {
    const int n = dim_a * dim_b;
    if (level_set.empty()) throw ValidationError("run_multispecies: empty level set");
    for (int m : level_set)
        if (m < decomp.rank || m > n * n)
            throw DimensionError("run_multispecies: every level must lie in [rank, N^2]");
    if (j < 1) throw ValidationError("run_multispecies: need at least one particle");
    const int r = decomp.rank;
    const std::size_t nlevels = level_set.size();

    std::vector<std::vector<RngStream>> rngs(nlevels);
    std::vector<std::vector<Matrix>> particles(nlevels);
    for (std::size_t l = 0; l < nlevels; ++l) {
        for (int p = 0; p < j; ++p) {
            rngs[l].push_back(make_stream(config.seed, l, p));
            particles[l].push_back(cbo_hermitian::gue_sample(level_set[l], rngs[l][p]));
        }
    }

    // energies[t][l][p]: objective of particle (l,p) resized to level_set[t]
    std::vector<std::vector<std::vector<double>>> energies(
        nlevels, std::vector<std::vector<double>>(nlevels, std::vector<double>(j)));
    std::vector<Matrix> consensus(nlevels);
    std::vector<Matrix> cframes(nlevels);
    std::vector<double> ce(nlevels);

    auto evaluate_and_consensus = [&] {
        for (std::size_t t = 0; t < nlevels; ++t) {
            for (std::size_t l = 0; l < nlevels; ++l)
                for (int p = 0; p < j; ++p) {
                    const Matrix resized = resize(particles[l][p], level_set[t]);
                    energies[t][l][p] = quantum::objective_value(
                        decomp, linalg::stiefel_from_hermitian(resized, r), dim_a, dim_b);
                }
            consensus[t] = cross_consensus(particles, energies[t], config.beta, level_set[t]);
            cframes[t] = linalg::stiefel_from_hermitian(consensus[t], r);
            ce[t] = quantum::objective_value(decomp, cframes[t], dim_a, dim_b);
        }
    };

    std::map<int, RunTrace> traces;
    evaluate_and_consensus();
    if (config.max_iter == 0) {
        for (std::size_t t = 0; t < nlevels; ++t) {
            RunTrace trace;
            trace.best_eof = ce[t];
            trace.best_iter = 0;
            trace.best_consensus_frame = cframes[t];
            traces[level_set[t]] = std::move(trace);
        }
        return traces;
    }

    for (std::size_t t = 0; t < nlevels; ++t) {
        RunTrace trace;
        trace.best_eof = std::numeric_limits<double>::infinity();
        trace.records.reserve(config.max_iter);
        traces[level_set[t]] = std::move(trace);
    }

    for (int k = 1; k <= config.max_iter; ++k) {
        for (std::size_t l = 0; l < nlevels; ++l)
            cbo_hermitian::hermitian_step(particles[l], consensus[l], config, rngs[l]);
        evaluate_and_consensus();
        for (std::size_t t = 0; t < nlevels; ++t) {
            RunTrace& trace = traces[level_set[t]];
            // ensemble stats over the level's own (identity-resized) energies
            const std::vector<double>& own = energies[t][t];
            double emin = own[0], esum = 0.0;
            for (double e : own) {
                emin = std::min(emin, e);
                esum += e;
            }
            trace.records.push_back(TraceRecord{k, ce[t], emin, esum / j});
            if (ce[t] < trace.best_eof) {
                trace.best_eof = ce[t];
                trace.best_iter = k;
                trace.best_consensus_frame = cframes[t];
            }
        }
    }
    return traces;
}

}  // namespace eofcbo::multispecies
