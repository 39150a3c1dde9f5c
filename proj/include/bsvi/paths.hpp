#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "bsvi/linalg.hpp"
#include "bsvi/model.hpp"

namespace bsvi {

// Uniform grid on [0, T]; node i sits at i*T/N exactly.
struct TimeGrid {
    double horizon = 1.0;
    int steps = 1;

    double h() const { return horizon / steps; }
    double node(int i) const { return (horizon * i) / steps; }
};

// Seeded Brownian increments plus Euler forward states on a grid.
// Immutable after generation; safe to share read-only across workers.
struct PathEnsemble {
    TimeGrid grid;
    int paths = 0;
    int brownian_dim = 1;
    int state_dim = 1;
    std::uint64_t seed = 0;
    bool antithetic = false;

    // db[(i*paths + p)*k + c], x[(i*paths + p)*d + c]: time-major layout so
    // a single step is contiguous across paths.
    std::vector<double> db;
    std::vector<double> x;

    const double* db_at(int step, int path) const {
        return db.data() + (static_cast<std::size_t>(step) * paths + path) * brownian_dim;
    }
    const double* x_at(int step, int path) const {
        return x.data() + (static_cast<std::size_t>(step) * paths + path) * state_dim;
    }
    Vec state(int step, int path) const {
        const double* p = x_at(step, path);
        return Vec(p, p + state_dim);
    }
    Vec increment(int step, int path) const {
        const double* p = db_at(step, path);
        return Vec(p, p + brownian_dim);
    }
};

// Deterministic in (grid, forward, paths, k, seed) regardless of worker
// count; draws addressed by (path, step). Antithetic pairing requires an
// even path count.
PathEnsemble generate_paths(const TimeGrid& grid, const ForwardSpec& forward, int paths,
                            int brownian_dim, std::uint64_t seed, bool antithetic = false,
                            int threads = 1);

// Bridge refinement to 2N steps sharing the coarse Brownian motion: each
// coarse increment splits conditionally into two half-step increments.
PathEnsemble refine_paths(const PathEnsemble& coarse, const ForwardSpec& forward,
                          int threads = 1);

// Columnar audit dump: path,step,component,dB,X.
void dump_paths_csv(const PathEnsemble& ens, std::ostream& os);

}  // namespace bsvi
