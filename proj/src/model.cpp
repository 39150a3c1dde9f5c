#include "bsvi/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bsvi/errors.hpp"
#include "bsvi/rng.hpp"

namespace bsvi {

namespace {

constexpr double kAssumptionTol = 1e-8;
constexpr int kFSharpSamples = 1 << 14;

double halton(std::uint64_t i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

constexpr int kHaltonBases[6] = {2, 3, 5, 7, 11, 13};

// Low-discrepancy points in the cube [-1,1]^m, radially clipped to the
// unit ball so the boundary (where sups live) is well covered.
Vec halton_ball_point(std::uint64_t i, int dim) {
    Vec v(dim);
    for (int c = 0; c < dim; ++c) v[c] = 2.0 * halton(i + 1, kHaltonBases[c % 6]) - 1.0;
    const double n = norm(v);
    if (n > 1.0)
        for (auto& x : v) x /= n;
    return v;
}

std::string point_note(const Vec& y, double t) {
    std::string s = "t=";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", t);
    s += buf;
    s += " y=(";
    for (std::size_t i = 0; i < y.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6g", y[i]);
        s += buf;
        if (i + 1 < y.size()) s += ",";
    }
    return s + ")";
}

struct Worst {
    double margin = kInf;
    Vec where;
    double when = 0.0;
    void update(double m, const Vec& y, double t) {
        if (m < margin) {
            margin = m;
            where = y;
            when = t;
        }
    }
    bool seen() const { return margin < kInf; }
};

Vec box_point(const CounterRng& rng, std::uint64_t idx, std::uint64_t salt, int dim, double halfwidth) {
    Vec y(dim);
    for (int c = 0; c < dim; ++c)
        y[c] = halfwidth * (2.0 * rng.uniform(idx, salt, static_cast<std::uint32_t>(c)) - 1.0);
    return y;
}

Mat mat_point(const CounterRng& rng, std::uint64_t idx, std::uint64_t salt, int m, int k,
              double halfwidth) {
    Mat z(m, k);
    for (std::size_t c = 0; c < z.a.size(); ++c)
        z.a[c] = halfwidth * (2.0 * rng.uniform(idx, salt, static_cast<std::uint32_t>(c + 64)) - 1.0);
    return z;
}

}  // namespace

double f_sharp(const DriverSpec& driver, double rho, double t) {
    if (rho < 0.0) throw std::invalid_argument("f_sharp: rho must be nonnegative");
    if (driver.local_bound) return driver.local_bound(rho, t);
    return f_sharp_centered(driver, Vec(driver.m, 0.0), rho, t);
}

double f_sharp_centered(const DriverSpec& driver, const Vec& u0, double radius, double t) {
    const int m = driver.m;
    const Mat z0(m, driver.k);
    Vec x(m, 0.0);
    double best = 0.0;
    // center and axis extremes first, then the low-discrepancy cloud
    {
        Vec y = u0;
        best = std::max(best, norm(driver.at(t, y, y, z0)));
        for (int c = 0; c < m; ++c) {
            for (double sgn : {-1.0, 1.0}) {
                y = u0;
                y[c] += sgn * radius;
                best = std::max(best, norm(driver.at(t, y, y, z0)));
            }
        }
    }
    for (int i = 0; i < kFSharpSamples; ++i) {
        Vec y = halton_ball_point(static_cast<std::uint64_t>(i), m);
        for (int c = 0; c < m; ++c) y[c] = u0[c] + radius * y[c];
        best = std::max(best, norm(driver.at(t, y, y, z0)));
    }
    return best;
}

EstimateReport check_assumptions(const ConvexSpec& phi, const DriverSpec& driver,
                                 const TerminalSpec& terminal, const SamplingBudget& budget) {
    const CounterRng rng(budget.seed, 0xA55u);
    const int m = driver.m;
    const int k = driver.k;
    const int tp = std::max(2, budget.time_points);

    Worst my, lz, by, a4w, a5ell;
    int terminal_violations = 0;
    double bounded_data = 0.0;  // max over samples of |eta| + sum |F(t,u0,0)| h
    const Vec u0 = phi.anchor_point.empty() ? Vec(m, 0.0) : phi.anchor_point;
    const Mat z0(m, k);
    bool fsharp_finite = true;

    for (int s = 0; s < budget.samples; ++s) {
        const std::uint64_t i = static_cast<std::uint64_t>(s);
        const double t = budget.horizon * static_cast<double>(s % tp) / (tp - 1);
        const Vec x = box_point(rng, i, 1, m, budget.halfwidth);
        const Vec y = box_point(rng, i, 2, m, budget.halfwidth);
        const Vec yp = box_point(rng, i, 3, m, budget.halfwidth);
        const Mat z = mat_point(rng, i, 4, m, k, budget.halfwidth);
        const Mat zp = mat_point(rng, i, 5, m, k, budget.halfwidth);

        // (M_y)
        {
            const Vec fy = driver.at(t, x, y, z);
            const Vec fyp = driver.at(t, x, yp, z);
            const double lhs = dot(sub(yp, y), sub(fyp, fy));
            const double rhs = driver.mu(t) * norm_sq(sub(yp, y));
            my.update(rhs - lhs, y, t);
        }
        // (L_z)
        {
            const Vec fz = driver.at(t, x, y, z);
            const Vec fzp = driver.at(t, x, y, zp);
            Mat dz(m, k);
            for (std::size_t c = 0; c < dz.a.size(); ++c) dz.a[c] = zp.a[c] - z.a[c];
            lz.update(driver.ell(t) * frob_norm(dz) - norm(sub(fzp, fz)), y, t);
        }
        // (B_y) dominance of the supplied local bound
        if (driver.local_bound) {
            const double rho = norm(y);
            by.update(driver.local_bound(rho, t) - norm(driver.at(t, x, y, z0)), y, t);
        }
        // (A4)(ii) on the prox graph
        if (driver.a4) {
            const double lambda = 0.05 + 2.0 * rng.uniform(i, 6, 0);
            const Vec u = phi.prox(y, lambda);
            Vec uhat(m);
            for (int c = 0; c < m; ++c) uhat[c] = (y[c] - u[c]) / lambda;
            const Vec f = driver.at(t, x, u, z);
            const double lhs = dot(uhat, f);
            const double rhs = 0.5 * norm_sq(uhat) + driver.a4->beta +
                               driver.a4->b * std::pow(norm(u), driver.a4->p) +
                               driver.a4->kappa * frob_norm(z) * frob_norm(z);
            a4w.update(rhs - lhs, u, t);
        }
        // terminal maps into Dom(phi)
        {
            const Vec eta = terminal.g(x);
            if (!std::isfinite(phi.value(eta))) ++terminal_violations;
            if (driver.a5) {
                double acc = norm(eta);
                const double h = budget.horizon / tp;
                for (int q = 0; q < tp; ++q)
                    acc += norm(driver.at(budget.horizon * q / tp, u0, u0, z0)) * h;
                bounded_data = std::max(bounded_data, acc);
            }
        }
        // (A5)(ii)
        if (driver.a5) a5ell.update(driver.a5->lipschitz_l - driver.ell(t), y, t);
    }
    if (driver.a5) {
        for (int q = 0; q < tp; ++q) {
            const double t = budget.horizon * q / (tp - 1);
            if (!std::isfinite(f_sharp(driver, budget.halfwidth, t))) fsharp_finite = false;
        }
    }

    EstimateReport rep;
    rep.name = "assumptions";
    rep.tolerance = kAssumptionTol;
    rep.add("margin_My", my.margin, 0.0, point_note(my.where, my.when));
    rep.add("margin_Lz", lz.margin, 0.0, point_note(lz.where, lz.when));
    if (by.seen()) rep.add("margin_By", by.margin, 0.0, point_note(by.where, by.when));
    if (a4w.seen()) rep.add("margin_A4ii", a4w.margin, 0.0, point_note(a4w.where, a4w.when));
    rep.add("terminal_domain_violations", static_cast<double>(terminal_violations));
    if (driver.a5) {
        rep.add("margin_A5ii_ell", a5ell.margin);
        rep.add("bounded_data_estimate", bounded_data, 0.0, "estimate");
        rep.add("margin_A5iii", driver.a5->bound_m - bounded_data, 0.0, "estimate");
        rep.add("a5_fsharp_finite", fsharp_finite ? 1.0 : 0.0);
    }
    // anchored driver value, used by normalization consistency checks
    rep.add("f_at_anchor", norm(driver.at(0.0, u0, u0, z0)));

    rep.pass = my.margin >= -kAssumptionTol && lz.margin >= -kAssumptionTol &&
               terminal_violations == 0;
    if (by.seen() && by.margin < -kAssumptionTol) rep.pass = false;
    if (a4w.seen() && a4w.margin < -kAssumptionTol) rep.pass = false;
    if (driver.a5 && (a5ell.margin < -kAssumptionTol || !fsharp_finite)) rep.pass = false;
    return rep;
}

}  // namespace bsvi
