#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "bsvi/convex.hpp"
#include "bsvi/linalg.hpp"
#include "bsvi/report.hpp"

namespace bsvi {

// Compatibility data: <u_hat, F(t,u,z)> <= |u_hat|^2/2 + beta + b|u|^p + kappa|z|^2
// over the subdifferential graph.
struct A4Params {
    double beta = 0.0;
    double b = 0.0;
    double kappa = 0.0;
    double p = 2.0;
};

// Bounded-data constants: ell <= L and |eta| + int |F(s,u0,0)| ds <= M.
struct A5Params {
    double bound_m = 0.0;
    double lipschitz_l = 0.0;
};

// Generator F(t,x,y,z) with its monotonicity/Lipschitz metadata. The rates
// mu, ell are supplied, never inferred; sampling only validates them.
struct DriverSpec {
    std::string name;
    int m = 1;
    int k = 1;
    std::function<Vec(double t, const Vec& x, const Vec& y, const Mat& z)> eval;
    std::function<double(double t)> mu;
    std::function<double(double t)> ell;
    // Optional closed form for F_rho^#(t) = sup_{|y|<=rho} |F(t,y,0)|.
    std::function<double(double rho, double t)> local_bound;
    std::optional<A4Params> a4;
    std::optional<A5Params> a5;

    Vec at(double t, const Vec& x, const Vec& y, const Mat& z) const { return eval(t, x, y, z); }
};

struct TerminalSpec {
    std::string name;
    std::function<Vec(const Vec& x_T)> g;
    std::optional<double> sup_bound;  // uniform bound on |eta| when known
};

// Markovian forward state; identity means X = x0 + B.
struct ForwardSpec {
    std::string name = "identity";
    bool identity = true;
    int d = 1;
    int k = 1;
    Vec x0;
    std::function<Vec(double t, const Vec& x)> drift;
    std::function<Mat(double t, const Vec& x)> diffusion;
    double drift_lipschitz = 0.0;
    double diffusion_lipschitz = 0.0;
};

struct Problem {
    ConvexSpec phi;
    DriverSpec driver;
    TerminalSpec terminal;
    ForwardSpec forward;
    std::optional<double> radius_bound;  // user-supplied a priori radius R0
};

struct SamplingBudget {
    int samples = 2000;
    std::uint64_t seed = 1;
    double halfwidth = 5.0;
    int time_points = 5;
    double horizon = 1.0;
};

// Sampled verification of the assumption set: monotonicity and Lipschitz
// rates, local-bound dominance, the compatibility inequality on the prox
// graph, and the bounded-data clauses. Violations become report entries,
// never exceptions.
EstimateReport check_assumptions(const ConvexSpec& phi, const DriverSpec& driver,
                                 const TerminalSpec& terminal, const SamplingBudget& budget);

// F_rho^#(t): closed form when supplied, else a low-discrepancy estimate
// over the ball |y| <= rho (flagged as a lower estimate in reports).
double f_sharp(const DriverSpec& driver, double rho, double t);

// sup_{|y-u0|<=R} |F(t,y,0)|, same estimation strategy.
double f_sharp_centered(const DriverSpec& driver, const Vec& u0, double radius, double t);

}  // namespace bsvi
