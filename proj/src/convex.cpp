#include "bsvi/convex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bsvi/errors.hpp"
#include "bsvi/model.hpp"
#include "bsvi/rng.hpp"

namespace bsvi {

namespace {

void require_finite(const Vec& y, const char* who) {
    if (!all_finite(y)) throw std::invalid_argument(std::string(who) + ": non-finite input point");
}

std::string point_note(const Vec& y) {
    std::string s = "at (";
    char buf[32];
    for (std::size_t i = 0; i < y.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6g", y[i]);
        s += buf;
        if (i + 1 < y.size()) s += ",";
    }
    return s + ")";
}

Vec sample_box(const CounterRng& rng, std::uint64_t idx, std::uint64_t salt, const Vec& center,
               double halfwidth) {
    Vec y(center.size());
    for (std::size_t c = 0; c < y.size(); ++c)
        y[c] = center[c] + halfwidth * (2.0 * rng.uniform(idx, salt, static_cast<std::uint32_t>(c)) - 1.0);
    return y;
}

// Cube sample pushed into the closed unit ball (radially clipped, which
// biases mass toward the sphere -- intended for sup-type checks).
Vec sample_unit_ball(const CounterRng& rng, std::uint64_t idx, std::uint64_t salt, int dim) {
    Vec v(dim);
    for (int c = 0; c < dim; ++c) v[c] = 2.0 * rng.uniform(idx, salt, static_cast<std::uint32_t>(c)) - 1.0;
    const double n = norm(v);
    if (n > 1.0) for (auto& x : v) x /= n;
    return v;
}

double sample_lambda(const CounterRng& rng, std::uint64_t idx, std::uint64_t salt) {
    const double u = rng.uniform(idx, salt, 1000);
    return std::exp(std::log(0.05) + u * (std::log(5.0) - std::log(0.05)));
}

struct WorstMargin {
    double margin = kInf;
    Vec where;
    void update(double m, const Vec& y) {
        if (m < margin) {
            margin = m;
            where = y;
        }
    }
    bool seen() const { return margin < kInf; }
};

}  // namespace

double yosida_value(const YosidaView& view, const Vec& y) {
    require_finite(y, "yosida_value");
    if (view.epsilon <= 0.0) throw std::invalid_argument("yosida_value: epsilon must be positive");
    const Vec j = view.resolvent(y);
    return dist(y, j) * dist(y, j) / (2.0 * view.epsilon) + view.base.value(j);
}

Vec yosida_grad(const YosidaView& view, const Vec& y) {
    require_finite(y, "yosida_grad");
    if (view.epsilon <= 0.0) throw std::invalid_argument("yosida_grad: epsilon must be positive");
    const Vec j = view.resolvent(y);
    Vec g(y.size());
    for (std::size_t c = 0; c < y.size(); ++c) g[c] = (y[c] - j[c]) / view.epsilon;
    return g;
}

Vec resolvent_of_yosida(const YosidaView& view, double h, const Vec& x) {
    require_finite(x, "resolvent_of_yosida");
    if (h <= 0.0 || view.epsilon <= 0.0)
        throw std::invalid_argument("resolvent_of_yosida: h and epsilon must be positive");
    const double eps = view.epsilon;
    const Vec j = view.base.prox(x, eps + h);
    // y = x - h/(eps+h) * (x - J_{eps+h}(x)); passthrough is exact when J(x)=x.
    const double w = h / (eps + h);
    Vec y(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) y[c] = x[c] - w * (x[c] - j[c]);
    return y;
}

std::pair<ConvexSpec, DriverSpec> normalize(const ConvexSpec& phi, const DriverSpec& driver) {
    if (phi.anchor_point.empty())
        throw ConfigError("normalize: convex spec '" + phi.name + "' has no anchor (u0, u0_hat)");
    const Vec u0 = phi.anchor_point;
    const Vec slope = phi.anchor_slope.empty() ? Vec(u0.size(), 0.0) : phi.anchor_slope;
    const double phi_u0 = phi.value(u0);
    if (!std::isfinite(phi_u0))
        throw ConfigError("normalize: phi(u0) is not finite for '" + phi.name + "'");

    ConvexSpec out = phi;
    out.name = phi.name + "~";
    const auto base_value = phi.value;
    const auto base_prox = phi.prox;
    const auto base_subgrad = phi.subgrad_at;
    out.value = [base_value, u0, slope, phi_u0](const Vec& y) {
        const double v = base_value(y);
        if (!std::isfinite(v)) return v;
        double lin = 0.0;
        for (std::size_t c = 0; c < y.size(); ++c) lin += slope[c] * (y[c] - u0[c]);
        return v - phi_u0 - lin;
    };
    out.prox = [base_prox, slope](const Vec& y, double lambda) {
        Vec shifted(y.size());
        for (std::size_t c = 0; c < y.size(); ++c) shifted[c] = y[c] + lambda * slope[c];
        return base_prox(shifted, lambda);
    };
    out.subgrad_at = [base_subgrad, slope](const Vec& y) -> std::optional<Vec> {
        auto g = base_subgrad(y);
        if (!g) return std::nullopt;
        for (std::size_t c = 0; c < g->size(); ++c) (*g)[c] -= slope[c];
        return g;
    };
    out.anchor_slope = Vec(u0.size(), 0.0);
    if (phi.interior) {
        InteriorBall ball = *phi.interior;
        ball.value_bound = phi.interior->value_bound - phi_u0 + phi.interior->radius * norm(slope);
        out.interior = ball;
    }

    DriverSpec fd = driver;
    fd.name = driver.name + "~";
    const auto base_eval = driver.eval;
    fd.eval = [base_eval, slope](double t, const Vec& x, const Vec& y, const Mat& z) {
        Vec v = base_eval(t, x, y, z);
        for (std::size_t c = 0; c < v.size(); ++c) v[c] -= slope[c];
        return v;
    };
    if (driver.local_bound) {
        const auto base_lb = driver.local_bound;
        const double slope_norm = norm(slope);
        fd.local_bound = [base_lb, slope_norm](double rho, double t) {
            return base_lb(rho, t) + slope_norm;
        };
    }
    return {std::move(out), std::move(fd)};
}

EstimateReport check_yosida_inequalities(const YosidaView& view_a, const YosidaView& view_b,
                                         int samples, std::uint64_t seed) {
    const ConvexSpec& phi = view_a.base;
    const double tol = std::max(view_a.base.check_tol(), view_b.base.check_tol());
    const double eps = view_a.epsilon;
    const double del = view_b.epsilon;
    const CounterRng rng(seed, 0x59u);

    WorstMargin wa, wb, wc, wd;
    for (int s = 0; s < samples; ++s) {
        const std::uint64_t i = static_cast<std::uint64_t>(s);
        const Vec x = sample_box(rng, i, 1, phi.anchor_point, phi.sample_halfwidth);
        const Vec y = sample_box(rng, i, 2, phi.anchor_point, phi.sample_halfwidth);
        const Vec v = phi.prox(sample_box(rng, i, 3, phi.anchor_point, phi.sample_halfwidth), 1.0);

        const Vec gax = yosida_grad(view_a, x);
        const Vec gay = yosida_grad(view_a, y);
        const Vec gby = yosida_grad(view_b, y);
        const Vec jax = view_a.resolvent(x);

        // (a) grad lies in the subdifferential at the resolvent point
        const double lhs_a = phi.value(v);
        if (std::isfinite(lhs_a)) {
            double rhs_a = phi.value(jax);
            for (std::size_t c = 0; c < v.size(); ++c) rhs_a += gax[c] * (v[c] - jax[c]);
            wa.update(lhs_a - rhs_a, x);
        }
        // (b) 1/eps Lipschitz gradient
        wb.update(dist(x, y) / eps - dist(gax, gay), x);
        // (c) monotone gradient
        wc.update(dot(sub(gax, gay), sub(x, y)), x);
        // (d) cross-parameter bound
        wd.update(dot(sub(gax, gby), sub(x, y)) + (eps + del) * dot(gax, gby), x);
    }

    EstimateReport rep;
    rep.name = "yosida_inequalities";
    rep.tolerance = tol;
    rep.add("margin_a_subgradient", wa.margin, 0.0, point_note(wa.where));
    rep.add("margin_b_lipschitz", wb.margin, 0.0, point_note(wb.where));
    rep.add("margin_c_monotone", wc.margin, 0.0, point_note(wc.where));
    rep.add("margin_d_cross", wd.margin, 0.0, point_note(wd.where));
    rep.add("epsilon_a", eps);
    rep.add("epsilon_b", del);
    rep.pass = wa.margin >= -tol && wb.margin >= -tol && wc.margin >= -tol && wd.margin >= -tol;
    return rep;
}

EstimateReport check_convex_properties(const ConvexSpec& phi, int samples, std::uint64_t seed) {
    const double tol = phi.check_tol();
    const CounterRng rng(seed, 0x43u);
    const Vec& u0 = phi.anchor_point;
    const Vec slope = phi.anchor_slope.empty() ? Vec(u0.size(), 0.0) : phi.anchor_slope;
    const bool normalized = norm(slope) == 0.0 && std::abs(phi.value(u0)) <= tol;

    WorstMargin conv, nonexp, opt, anchor, interior, order, epsmono;
    const double eps_grid[4] = {0.1, 0.25, 1.0, 4.0};

    for (int s = 0; s < samples; ++s) {
        const std::uint64_t i = static_cast<std::uint64_t>(s);
        const Vec raw_x = sample_box(rng, i, 11, u0, phi.sample_halfwidth);
        const Vec raw_y = sample_box(rng, i, 12, u0, phi.sample_halfwidth);
        const double lambda = sample_lambda(rng, i, 13);
        const double theta = rng.uniform(i, 14, 0);

        // segment convexity on domain points
        const Vec dx = phi.prox(raw_x, 1.0);
        const Vec dy = phi.prox(raw_y, 1.0);
        Vec mid(dx.size());
        for (std::size_t c = 0; c < mid.size(); ++c) mid[c] = theta * dx[c] + (1.0 - theta) * dy[c];
        const double vx = phi.value(dx), vy = phi.value(dy), vm = phi.value(mid);
        if (std::isfinite(vx) && std::isfinite(vy))
            conv.update(theta * vx + (1.0 - theta) * vy - vm, mid);

        // nonexpansiveness of the resolvent
        const Vec px = phi.prox(raw_x, lambda);
        const Vec py = phi.prox(raw_y, lambda);
        nonexp.update(dist(raw_x, raw_y) - dist(px, py), raw_x);

        // prox optimality against a sampled competitor
        const double obj_at_prox =
            dist(raw_y, py) * dist(raw_y, py) / (2.0 * lambda) + phi.value(py);
        const double obj_at_v = dist(raw_y, dx) * dist(raw_y, dx) / (2.0 * lambda) + phi.value(dx);
        if (std::isfinite(obj_at_v)) opt.update(obj_at_v - obj_at_prox, raw_y);

        // anchor subgradient inequality
        if (!u0.empty() && std::isfinite(vx)) {
            double lin = phi.value(u0);
            for (std::size_t c = 0; c < dx.size(); ++c) lin += slope[c] * (dx[c] - u0[c]);
            anchor.update(vx - lin, dx);
        }

        // interior value bound
        if (phi.interior) {
            const Vec v = sample_unit_ball(rng, i, 15, phi.dim);
            Vec pt(u0.size());
            for (std::size_t c = 0; c < pt.size(); ++c) pt[c] = u0[c] + phi.interior->radius * v[c];
            interior.update(phi.interior->value_bound - phi.value(pt), pt);
        }

        // envelope ordering phi(J_e y) <= phi_e(y) <= phi(y), plus
        // positivity of each term for normalized specs
        {
            const double e = eps_grid[s % 4];
            const YosidaView view{phi, e};
            const Vec j = view.resolvent(raw_y);
            const double env = yosida_value(view, raw_y);
            const double at_j = phi.value(j);
            order.update(env - at_j, raw_y);
            const double at_y = phi.value(raw_y);
            if (std::isfinite(at_y)) order.update(at_y - env, raw_y);
            if (normalized) order.update(at_j, raw_y);
        }

        // envelope value nonincreasing in epsilon
        {
            double prev = kInf;
            for (double e : eps_grid) {
                const double env = yosida_value(YosidaView{phi, e}, raw_y);
                if (prev < kInf) epsmono.update(prev - env, raw_y);
                prev = env;
            }
        }
    }

    // gradient vanishes at the anchor of a normalized spec
    double anchor_grad = 0.0;
    if (normalized && !u0.empty()) {
        for (double e : eps_grid)
            anchor_grad = std::max(anchor_grad, norm(yosida_grad(YosidaView{phi, e}, u0)));
    }

    EstimateReport rep;
    rep.name = "convex_properties:" + phi.name;
    rep.tolerance = tol;
    rep.add("margin_convexity", conv.margin, 0.0, point_note(conv.where));
    rep.add("margin_nonexpansive", nonexp.margin, 0.0, point_note(nonexp.where));
    rep.add("margin_prox_optimality", opt.margin, 0.0, point_note(opt.where));
    rep.add("margin_anchor", anchor.margin, 0.0, point_note(anchor.where));
    rep.add("margin_envelope_order", order.margin, 0.0, point_note(order.where));
    rep.add("margin_eps_monotone", epsmono.margin, 0.0, point_note(epsmono.where));
    if (phi.interior) rep.add("margin_interior_bound", interior.margin, 0.0, point_note(interior.where));
    if (normalized) rep.add("anchor_grad_norm", anchor_grad);
    rep.pass = true;
    for (const auto& e : rep.entries) {
        if (e.term.rfind("margin_", 0) == 0 && e.value < -tol) rep.pass = false;
        if (e.term == "anchor_grad_norm" && e.value > tol) rep.pass = false;
    }
    return rep;
}

// -- catalog -----------------------------------------------------------

ConvexSpec make_zero(int dim) {
    ConvexSpec s;
    s.dim = dim;
    s.name = "zero";
    s.value = [](const Vec&) { return 0.0; };
    s.prox = [](const Vec& y, double) { return y; };
    s.subgrad_at = [dim](const Vec&) -> std::optional<Vec> { return Vec(dim, 0.0); };
    s.anchor_point = Vec(dim, 0.0);
    s.anchor_slope = Vec(dim, 0.0);
    s.interior = InteriorBall{1.0, 0.0};
    return s;
}

ConvexSpec make_quadratic(int dim, double lambda, Vec center, Vec linear) {
    if (center.empty()) center = Vec(dim, 0.0);
    if (linear.empty()) linear = Vec(dim, 0.0);
    ConvexSpec s;
    s.dim = dim;
    s.name = "quadratic";
    s.value = [lambda, center, linear](const Vec& y) {
        double q = 0.0, lin = 0.0;
        for (std::size_t c = 0; c < y.size(); ++c) {
            const double d = y[c] - center[c];
            q += d * d;
            lin += linear[c] * d;
        }
        return 0.5 * lambda * q + lin;
    };
    s.prox = [lambda, center, linear](const Vec& y, double t) {
        Vec v(y.size());
        for (std::size_t c = 0; c < y.size(); ++c)
            v[c] = (y[c] + t * lambda * center[c] - t * linear[c]) / (1.0 + t * lambda);
        return v;
    };
    s.subgrad_at = [lambda, center, linear](const Vec& y) -> std::optional<Vec> {
        Vec g(y.size());
        for (std::size_t c = 0; c < y.size(); ++c) g[c] = lambda * (y[c] - center[c]) + linear[c];
        return g;
    };
    s.anchor_point = center;
    s.anchor_slope = linear;
    const double r0 = 1.0;
    s.interior = InteriorBall{r0, 0.5 * lambda * r0 * r0 + norm(linear) * r0};
    return s;
}

namespace {

double membership_tol(double scale) { return 1e-9 * (1.0 + std::abs(scale)); }

}  // namespace

ConvexSpec make_box(Vec lower, Vec upper) {
    const int dim = static_cast<int>(lower.size());
    ConvexSpec s;
    s.dim = dim;
    s.name = "box";
    s.value = [lower, upper](const Vec& y) {
        for (std::size_t c = 0; c < y.size(); ++c) {
            if (y[c] < lower[c] - membership_tol(lower[c])) return kInf;
            if (y[c] > upper[c] + membership_tol(upper[c])) return kInf;
        }
        return 0.0;
    };
    s.prox = [lower, upper](const Vec& y, double) {
        Vec v = y;
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (v[c] < lower[c]) v[c] = lower[c];
            if (v[c] > upper[c]) v[c] = upper[c];
        }
        return v;
    };
    s.subgrad_at = [lower, upper, dim](const Vec& y) -> std::optional<Vec> {
        for (std::size_t c = 0; c < y.size(); ++c)
            if (y[c] < lower[c] - membership_tol(lower[c]) ||
                y[c] > upper[c] + membership_tol(upper[c]))
                return std::nullopt;
        return Vec(dim, 0.0);
    };
    Vec u0(dim, 0.0);
    double r0 = kInf;
    for (int c = 0; c < dim; ++c) {
        const bool lo_fin = std::isfinite(lower[c]);
        const bool hi_fin = std::isfinite(upper[c]);
        if (lo_fin && hi_fin) {
            u0[c] = 0.5 * (lower[c] + upper[c]);
            r0 = std::min(r0, 0.5 * (upper[c] - lower[c]));
        } else if (lo_fin) {
            u0[c] = lower[c] + 1.0;
            r0 = std::min(r0, 1.0);
        } else if (hi_fin) {
            u0[c] = upper[c] - 1.0;
            r0 = std::min(r0, 1.0);
        } else {
            u0[c] = 0.0;
        }
    }
    if (!std::isfinite(r0)) r0 = 1.0;
    s.anchor_point = u0;
    s.anchor_slope = Vec(dim, 0.0);
    if (r0 > 0.0) s.interior = InteriorBall{r0, 0.0};
    return s;
}

ConvexSpec make_ball(Vec center, double radius) {
    const int dim = static_cast<int>(center.size());
    ConvexSpec s;
    s.dim = dim;
    s.name = "ball";
    s.value = [center, radius](const Vec& y) {
        return dist(y, center) <= radius + membership_tol(radius) ? 0.0 : kInf;
    };
    s.prox = [center, radius](const Vec& y, double) {
        const double d = dist(y, center);
        if (d <= radius) return y;
        Vec v(y.size());
        const double w = radius / d;
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = center[c] + w * (y[c] - center[c]);
        return v;
    };
    s.subgrad_at = [center, radius, dim](const Vec& y) -> std::optional<Vec> {
        if (dist(y, center) > radius + membership_tol(radius)) return std::nullopt;
        return Vec(dim, 0.0);
    };
    s.anchor_point = center;
    s.anchor_slope = Vec(dim, 0.0);
    s.interior = InteriorBall{radius, 0.0};
    return s;
}

ConvexSpec make_halfspace(Vec normal, double offset) {
    const int dim = static_cast<int>(normal.size());
    const double nsq = norm_sq(normal);
    if (nsq <= 0.0) throw ConfigError("make_halfspace: zero normal");
    ConvexSpec s;
    s.dim = dim;
    s.name = "halfspace";
    s.value = [normal, offset](const Vec& y) {
        return dot(normal, y) <= offset + membership_tol(offset) * std::sqrt(norm_sq(normal))
                   ? 0.0
                   : kInf;
    };
    s.prox = [normal, offset, nsq](const Vec& y, double) {
        const double slack = dot(normal, y) - offset;
        if (slack <= 0.0) return y;
        Vec v(y.size());
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = y[c] - (slack / nsq) * normal[c];
        return v;
    };
    s.subgrad_at = [normal, offset, dim](const Vec& y) -> std::optional<Vec> {
        if (dot(normal, y) > offset + membership_tol(offset) * std::sqrt(norm_sq(normal)))
            return std::nullopt;
        return Vec(dim, 0.0);
    };
    const double nn = std::sqrt(nsq);
    Vec u0(dim);
    for (int c = 0; c < dim; ++c) u0[c] = normal[c] * (offset - nn) / nsq;
    s.anchor_point = u0;
    s.anchor_slope = Vec(dim, 0.0);
    s.interior = InteriorBall{1.0, 0.0};
    return s;
}

ConvexSpec make_polyhedron(std::vector<Vec> normals, Vec offsets, Vec interior_point,
                           double interior_radius) {
    if (normals.empty() || normals.size() != offsets.size())
        throw ConfigError("make_polyhedron: need matching normals/offsets");
    const int dim = static_cast<int>(normals.front().size());
    for (std::size_t i = 0; i < normals.size(); ++i) {
        const double margin = offsets[i] - dot(normals[i], interior_point);
        if (margin < interior_radius * norm(normals[i]))
            throw ConfigError("make_polyhedron: interior ball not certified by constraint " +
                              std::to_string(i));
    }
    auto violation = [normals, offsets](const Vec& y) {
        double worst = 0.0;
        for (std::size_t i = 0; i < normals.size(); ++i)
            worst = std::max(worst, (dot(normals[i], y) - offsets[i]) / norm(normals[i]));
        return worst;
    };
    ConvexSpec s;
    s.dim = dim;
    s.name = "polyhedron";
    s.exact_prox = false;
    s.value = [violation](const Vec& y) { return violation(y) <= 1e-9 ? 0.0 : kInf; };
    // Dykstra over halfspace projections; iteration cap 1e4.
    s.prox = [normals, offsets, violation](const Vec& y, double) {
        const std::size_t nsets = normals.size();
        Vec x = y;
        std::vector<Vec> incr(nsets, Vec(y.size(), 0.0));
        for (int cycle = 0; cycle < 10000; ++cycle) {
            double change = 0.0;
            for (std::size_t i = 0; i < nsets; ++i) {
                Vec w = add(x, incr[i]);
                const double slack = dot(normals[i], w) - offsets[i];
                Vec px = w;
                if (slack > 0.0) {
                    const double nsq = norm_sq(normals[i]);
                    for (std::size_t c = 0; c < px.size(); ++c)
                        px[c] = w[c] - (slack / nsq) * normals[i][c];
                }
                incr[i] = sub(w, px);
                change = std::max(change, dist(x, px));
                x = px;
            }
            if (change <= 1e-12 && violation(x) <= 1e-12) break;
        }
        return x;
    };
    s.subgrad_at = [violation, dim](const Vec& y) -> std::optional<Vec> {
        if (violation(y) > 1e-9) return std::nullopt;
        return Vec(dim, 0.0);
    };
    s.anchor_point = interior_point;
    s.anchor_slope = Vec(dim, 0.0);
    s.interior = InteriorBall{interior_radius, 0.0};
    return s;
}

ConvexSpec make_scaled_norm(int dim, double lambda) {
    ConvexSpec s;
    s.dim = dim;
    s.name = "scaled_norm";
    s.value = [lambda](const Vec& y) { return lambda * norm(y); };
    s.prox = [lambda](const Vec& y, double t) {
        const double n = norm(y);
        const double thr = lambda * t;
        if (n <= thr) return Vec(y.size(), 0.0);
        Vec v(y.size());
        const double w = 1.0 - thr / n;
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = w * y[c];
        return v;
    };
    s.subgrad_at = [lambda](const Vec& y) -> std::optional<Vec> {
        const double n = norm(y);
        if (n == 0.0) return Vec(y.size(), 0.0);
        Vec g(y.size());
        for (std::size_t c = 0; c < y.size(); ++c) g[c] = lambda * y[c] / n;
        return g;
    };
    s.anchor_point = Vec(dim, 0.0);
    s.anchor_slope = Vec(dim, 0.0);
    s.interior = InteriorBall{1.0, lambda};
    return s;
}

std::vector<ConvexSpec> standard_catalog() {
    std::vector<ConvexSpec> cat;
    cat.push_back(make_zero(1));
    cat.push_back(make_quadratic(1, 1.0));
    cat.push_back(make_quadratic(2, 0.5, {0.5, -0.5}, {0.2, 0.0}));
    cat.push_back(make_box({-1.0}, {1.0}));
    cat.push_back(make_box({0.0}, {kInf}));
    cat.push_back(make_box({-1.0, -2.0}, {1.0, 0.5}));
    cat.push_back(make_ball({0.0, 0.0}, 1.0));
    cat.push_back(make_halfspace({1.0, 1.0}, 1.0));
    cat.push_back(make_polyhedron({{1.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}, {1.0, 1.0, 1.0},
                                  {0.0, 0.0}, 0.6));
    cat.push_back(make_scaled_norm(2, 1.5));
    return cat;
}

}  // namespace bsvi
