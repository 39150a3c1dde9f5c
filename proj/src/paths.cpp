#include "bsvi/paths.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bsvi/errors.hpp"
#include "bsvi/parallel.hpp"
#include "bsvi/rng.hpp"

namespace bsvi {

namespace {

constexpr std::uint64_t kIncrementStream = 1;
constexpr std::uint64_t kRefineStream = 2;

void euler_forward(const ForwardSpec& forward, const TimeGrid& grid, int paths, int p_begin,
                   int p_end, PathEnsemble& ens) {
    const int d = ens.state_dim;
    const int k = ens.brownian_dim;
    const int n = grid.steps;
    const double h = grid.h();
    for (int p = p_begin; p < p_end; ++p) {
        for (int c = 0; c < d; ++c)
            ens.x[(static_cast<std::size_t>(0) * paths + p) * d + c] = forward.x0[c];
        for (int i = 0; i < n; ++i) {
            const double* xi = ens.x_at(i, p);
            const double* dbi = ens.db_at(i, p);
            double* xn = ens.x.data() + (static_cast<std::size_t>(i + 1) * paths + p) * d;
            if (forward.identity) {
                for (int c = 0; c < d; ++c) xn[c] = xi[c] + dbi[c];
            } else {
                const double t = grid.node(i);
                const Vec xv(xi, xi + d);
                const Vec mu = forward.drift(t, xv);
                const Mat sig = forward.diffusion(t, xv);
                for (int c = 0; c < d; ++c) {
                    double acc = xi[c] + mu[c] * h;
                    for (int j = 0; j < k; ++j) acc += sig(c, j) * dbi[j];
                    xn[c] = acc;
                }
            }
        }
    }
}

}  // namespace

PathEnsemble generate_paths(const TimeGrid& grid, const ForwardSpec& forward, int paths,
                            int brownian_dim, std::uint64_t seed, bool antithetic, int threads) {
    if (paths < 1) throw std::invalid_argument("generate_paths: need at least one path");
    if (grid.steps < 1) throw std::invalid_argument("generate_paths: need at least one step");
    if (antithetic && paths % 2 != 0)
        throw ConfigError("generate_paths: antithetic pairing needs an even path count");
    if (forward.identity && forward.d != brownian_dim)
        throw ConfigError("generate_paths: identity forward requires d == k");

    const int n = grid.steps;
    const int d = forward.d;
    const std::size_t total = static_cast<std::size_t>(n) * paths * brownian_dim;
    if (total > (static_cast<std::size_t>(1) << 28))
        throw NumericError("generate_paths: ensemble exceeds capacity budget");

    PathEnsemble ens;
    ens.grid = grid;
    ens.paths = paths;
    ens.brownian_dim = brownian_dim;
    ens.state_dim = d;
    ens.seed = seed;
    ens.antithetic = antithetic;
    ens.db.resize(total);
    ens.x.resize(static_cast<std::size_t>(n + 1) * paths * d);

    const CounterRng rng(seed, kIncrementStream);
    const double sqrt_h = std::sqrt(grid.h());

    for_each_chunk(static_cast<std::size_t>(paths), threads,
                   [&](std::size_t, std::size_t b, std::size_t e) {
                       for (std::size_t p = b; p < e; ++p) {
                           const std::uint64_t draw_path = antithetic ? (p - p % 2) : p;
                           const double sign = (antithetic && p % 2 == 1) ? -1.0 : 1.0;
                           for (int i = 0; i < n; ++i) {
                               double* out =
                                   ens.db.data() +
                                   (static_cast<std::size_t>(i) * paths + p) * brownian_dim;
                               for (int c = 0; c < brownian_dim; c += 2) {
                                   double n0, n1;
                                   rng.normal_pair(draw_path, static_cast<std::uint64_t>(i),
                                                   static_cast<std::uint32_t>(c / 2), n0, n1);
                                   out[c] = sign * sqrt_h * n0;
                                   if (c + 1 < brownian_dim) out[c + 1] = sign * sqrt_h * n1;
                               }
                           }
                           euler_forward(forward, grid, paths, static_cast<int>(p),
                                         static_cast<int>(p) + 1, ens);
                       }
                   });
    return ens;
}

PathEnsemble refine_paths(const PathEnsemble& coarse, const ForwardSpec& forward, int threads) {
    PathEnsemble fine;
    fine.grid = TimeGrid{coarse.grid.horizon, coarse.grid.steps * 2};
    fine.paths = coarse.paths;
    fine.brownian_dim = coarse.brownian_dim;
    fine.state_dim = coarse.state_dim;
    fine.seed = coarse.seed;
    fine.antithetic = coarse.antithetic;
    const int n = coarse.grid.steps;
    const int k = coarse.brownian_dim;
    fine.db.resize(static_cast<std::size_t>(2 * n) * coarse.paths * k);
    fine.x.resize(static_cast<std::size_t>(2 * n + 1) * coarse.paths * coarse.state_dim);

    const CounterRng rng(coarse.seed, kRefineStream);
    // increment over the first half-step, conditional on the full-step
    // increment D: D/2 + w with w ~ N(0, h/4)
    const double half_sd = 0.5 * std::sqrt(coarse.grid.h() * 0.5);

    for_each_chunk(static_cast<std::size_t>(coarse.paths), threads,
                   [&](std::size_t, std::size_t b, std::size_t e) {
                       for (std::size_t p = b; p < e; ++p) {
                           const std::uint64_t draw_path =
                               coarse.antithetic ? (p - p % 2) : p;
                           const double sign = (coarse.antithetic && p % 2 == 1) ? -1.0 : 1.0;
                           for (int i = 0; i < n; ++i) {
                               const double* full = coarse.db_at(i, static_cast<int>(p));
                               double* out0 =
                                   fine.db.data() +
                                   (static_cast<std::size_t>(2 * i) * fine.paths + p) * k;
                               double* out1 =
                                   fine.db.data() +
                                   (static_cast<std::size_t>(2 * i + 1) * fine.paths + p) * k;
                               for (int c = 0; c < k; c += 2) {
                                   double n0, n1;
                                   rng.normal_pair(draw_path, static_cast<std::uint64_t>(i),
                                                   static_cast<std::uint32_t>(c / 2), n0, n1);
                                   const double w0 = sign * half_sd * n0;
                                   out0[c] = 0.5 * full[c] + w0;
                                   out1[c] = 0.5 * full[c] - w0;
                                   if (c + 1 < k) {
                                       const double w1 = sign * half_sd * n1;
                                       out0[c + 1] = 0.5 * full[c + 1] + w1;
                                       out1[c + 1] = 0.5 * full[c + 1] - w1;
                                   }
                               }
                           }
                           euler_forward(forward, fine.grid, fine.paths, static_cast<int>(p),
                                         static_cast<int>(p) + 1, fine);
                       }
                   });
    return fine;
}

void dump_paths_csv(const PathEnsemble& ens, std::ostream& os) {
    os << "path,step,component,dB,X\n";
    char buf[96];
    for (int p = 0; p < ens.paths; ++p) {
        for (int i = 0; i <= ens.grid.steps; ++i) {
            const int kmax = std::max(ens.brownian_dim, ens.state_dim);
            for (int c = 0; c < kmax; ++c) {
                const double db =
                    (i < ens.grid.steps && c < ens.brownian_dim) ? ens.db_at(i, p)[c] : 0.0;
                const double x = c < ens.state_dim ? ens.x_at(i, p)[c] : 0.0;
                std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.17g,%.17g\n", p, i, c, db, x);
                os << buf;
            }
        }
    }
}

}  // namespace bsvi
