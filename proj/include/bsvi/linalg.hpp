#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace bsvi {

// Points in R^m. Dimensions are small (m <= 6), so plain vectors are fine.
using Vec = std::vector<double>;

// Dense row-major matrix; used for Z in R^{m x k} and diffusion blocks.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0)
        : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

inline double dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm_sq(const Vec& x) { return dot(x, x); }
inline double norm(const Vec& x) { return std::sqrt(norm_sq(x)); }

inline double dist(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline Vec add(const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

inline Vec sub(const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

inline Vec scaled(const Vec& x, double c) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
    return r;
}

// x += c*y
inline void axpy(Vec& x, double c, const Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * y[i];
}

// Frobenius norm of a matrix (|z| in the Lipschitz condition).
inline double frob_norm(const Mat& z) {
    double s = 0.0;
    for (double v : z.a) s += v * v;
    return std::sqrt(s);
}

inline bool all_finite(const Vec& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace bsvi
