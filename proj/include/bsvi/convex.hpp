#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsvi/linalg.hpp"
#include "bsvi/report.hpp"

namespace bsvi {

struct DriverSpec;  // model.hpp

// Closed ball B(u0, radius) contained in Dom(phi), with
// value_bound >= sup { phi(u0 + radius*v) : |v| <= 1 }.
struct InteriorBall {
    double radius = 0.0;
    double value_bound = 0.0;
};

// A proper convex l.s.c. function with exact proximal access.
//
// `value` returns +inf outside the domain; `prox` is total (the resolvent
// (I + lambda*dphi)^{-1} is globally defined). `subgrad_at` returns the
// minimal-norm subgradient where one exists, nullopt otherwise.
// (anchor_point, anchor_slope) is a designated pair (u0, u0_hat) in the
// subdifferential graph.
struct ConvexSpec {
    int dim = 1;
    std::string name;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&, double)> prox;
    std::function<std::optional<Vec>(const Vec&)> subgrad_at;
    Vec anchor_point;
    Vec anchor_slope;
    std::optional<InteriorBall> interior;
    bool exact_prox = true;        // false: iterative prox, looser tolerances apply
    double sample_halfwidth = 5.0; // half-width of the sampling box around u0

    double check_tol() const { return exact_prox ? 1e-10 : 1e-8; }
};

// phi together with a regularization parameter epsilon > 0.
struct YosidaView {
    ConvexSpec base;
    double epsilon = 1.0;

    // J_epsilon(y) = (I + epsilon*dphi)^{-1}(y)
    Vec resolvent(const Vec& y) const { return base.prox(y, epsilon); }
};

// Moreau-Yosida envelope value: (1/2e)|y - J_e(y)|^2 + phi(J_e(y)).
double yosida_value(const YosidaView& view, const Vec& y);

// Gradient of the envelope: (y - J_e(y))/e; lies in dphi(J_e(y)).
Vec yosida_grad(const YosidaView& view, const Vec& y);

// Unique y solving y + h*grad_phi_eps(y) = x, evaluated in closed form as
// x - h/(eps+h) * (x - J_{eps+h}(x)); exact passthrough where the
// constraint is inactive.
Vec resolvent_of_yosida(const YosidaView& view, double h, const Vec& x);

// Shift phi and the driver so that the anchor becomes a global minimum
// with value 0: phi~(y) = phi(y) - phi(u0) - <u0_hat, y - u0>,
// F~ = F - u0_hat. The returned prox is exact whenever the input's is.
std::pair<ConvexSpec, DriverSpec> normalize(const ConvexSpec& phi, const DriverSpec& driver);

// Samples the gradient inequalities relating two regularization levels of
// the same base function: the 1/eps Lipschitz bound, cyclic monotonicity,
// and the cross-parameter lower bound with constant -(eps+delta).
EstimateReport check_yosida_inequalities(const YosidaView& view_a, const YosidaView& view_b,
                                         int samples, std::uint64_t seed);

// Sampled battery over one ConvexSpec: segment convexity, prox
// nonexpansiveness, prox optimality, anchor subgradient validity, interior
// value bound. Reported margins are >= -check_tol() when the spec is sound.
EstimateReport check_convex_properties(const ConvexSpec& phi, int samples, std::uint64_t seed);

// -- catalog -----------------------------------------------------------

ConvexSpec make_zero(int dim);
// (lambda/2)|y - center|^2 + <linear, y - center>
ConvexSpec make_quadratic(int dim, double lambda, Vec center = {}, Vec linear = {});
// Indicator of the product box [lower, upper]; infinite bounds allowed.
ConvexSpec make_box(Vec lower, Vec upper);
// Indicator of the closed ball B(center, radius).
ConvexSpec make_ball(Vec center, double radius);
// Indicator of {y : <normal, y> <= offset}.
ConvexSpec make_halfspace(Vec normal, double offset);
// Indicator of an intersection of halfspaces; prox via Dykstra iteration.
// interior_point/interior_radius describe a certified inscribed ball.
ConvexSpec make_polyhedron(std::vector<Vec> normals, Vec offsets, Vec interior_point,
                           double interior_radius);
// lambda * |y| (Euclidean norm).
ConvexSpec make_scaled_norm(int dim, double lambda);

// Representative instances used by toolkit-wide tests and `check yosida`.
std::vector<ConvexSpec> standard_catalog();

}  // namespace bsvi
