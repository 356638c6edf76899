#pragma once

#include <cstdint>
#include <vector>

#include "eofcbo/linalg.hpp"

namespace eofcbo {

// Solver parameters; defaults follow the standard benchmark setup
// (beta=200, lambda=1, dt=0.2, K=1000, Hermitian-family sigma=0.06).
struct CboConfig {
    double beta = 200.0;
    double lambda = 1.0;
    double sigma = 0.06;
    double additive_sigma = 0.06;  // sigma * delta, delta default 1
    double dt = 0.2;
    int max_iter = 1000;
    std::uint64_t seed = 0;
};

struct TraceRecord {
    int iter = 0;
    double consensus_eof = 0.0;
    double ensemble_min = 0.0;
    double ensemble_mean = 0.0;
};

// Per-run record. best_eof is min over recorded consensus objectives
// (for max_iter = 0, the initial consensus energy).
struct RunTrace {
    std::vector<TraceRecord> records;
    double best_eof = 0.0;
    int best_iter = 0;
    Matrix best_consensus_frame;  // the achieving consensus U (M x r)
};

}  // namespace eofcbo
