#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace tgc {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("squared_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// y += alpha * (a - b)
inline void axpy_diff(double alpha, std::span<const double> a, std::span<const double> b,
                      std::span<double> y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * (a[i] - b[i]);
}

// Cosine similarity with a norm floor so zero vectors do not divide by zero.
inline double cosine(std::span<const double> a, std::span<const double> b,
                     double norm_floor = 1e-12) {
    const double na = std::max(norm(a), norm_floor);
    const double nb = std::max(norm(b), norm_floor);
    return dot(a, b) / (na * nb);
}

// log(sigmoid(a)), large-|a| safe.
inline double log_sigmoid(double a) {
    if (a >= 0.0) return -std::log1p(std::exp(-a));
    return a - std::log1p(std::exp(a));
}

inline double sigmoid(double a) {
    if (a >= 0.0) return 1.0 / (1.0 + std::exp(-a));
    const double e = std::exp(a);
    return e / (1.0 + e);
}

}  // namespace tgc
