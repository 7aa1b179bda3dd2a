#pragma once

#include "weincalc/factorial.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace weincalc {

using Complex = std::complex<double>;

/// A point of the open unit ball in C^n.
struct BallPoint {
    std::vector<Complex> coords;

    [[nodiscard]] double squared_norm() const {
        double s = 0.0;
        for (const auto& z : coords) s += std::norm(z);
        return s;
    }
};

/// Homogeneous coordinates [w_1 : ... : w_{n+1}] of a point of CP^n.
struct HomogeneousPoint {
    std::vector<Complex> coords;

    [[nodiscard]] unsigned n() const { return static_cast<unsigned>(coords.size()) - 1; }

    /// Unit-norm representative whose last nonzero coordinate is real and positive.
    [[nodiscard]] HomogeneousPoint canonical() const {
        double norm2 = 0.0;
        for (const auto& w : coords) norm2 += std::norm(w);
        if (norm2 == 0.0) throw std::invalid_argument("homogeneous point with all coordinates zero");
        Complex anchor{};
        for (auto it = coords.rbegin(); it != coords.rend(); ++it)
            if (*it != Complex{}) {
                anchor = *it;
                break;
            }
        const Complex scale = std::conj(anchor) / (std::abs(anchor) * std::sqrt(norm2));
        HomogeneousPoint out{coords};
        for (auto& w : out.coords) w *= scale;
        return out;
    }
};

/// j(z) = [z_1 : ... : z_n : sqrt(1 - |z|^2)]
inline HomogeneousPoint embed_ball_to_cpn(const BallPoint& z) {
    const double r2 = z.squared_norm();
    if (!(r2 < 1.0)) throw std::invalid_argument("embed_ball_to_cpn: point is not in the open unit ball");
    HomogeneousPoint w;
    w.coords.reserve(z.coords.size() + 1);
    w.coords.assign(z.coords.begin(), z.coords.end());
    w.coords.emplace_back(std::sqrt(1.0 - r2), 0.0);
    return w;
}

/// Squared moduli of j(z) from those of z: (|z_1|^2, ..., |z_n|^2, 1 - |z|^2).
inline void embed_squared_moduli(std::span<const double> ball_sq, std::span<double> out) {
    double r2 = 0.0;
    for (std::size_t j = 0; j < ball_sq.size(); ++j) {
        out[j] = ball_sq[j];
        r2 += ball_sq[j];
    }
    out[ball_sq.size()] = 1.0 - r2;
}

/// Preimage under j of a point off the hyperplane w_{n+1} = 0:
/// (1 + sum |w_j/w_{n+1}|^2)^{-1/2} (w_1/w_{n+1}, ..., w_n/w_{n+1}).
inline BallPoint inverse_embed(const HomogeneousPoint& w) {
    if (w.coords.size() < 2) throw std::invalid_argument("inverse_embed: need at least two homogeneous coordinates");
    const Complex last = w.coords.back();
    if (last == Complex{}) throw std::invalid_argument("inverse_embed: point lies on the hyperplane w_{n+1} = 0");
    BallPoint z;
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < w.coords.size(); ++j) {
        z.coords.push_back(w.coords[j] / last);
        s += std::norm(z.coords.back());
    }
    const double scale = 1.0 / std::sqrt(1.0 + s);
    for (auto& c : z.coords) c *= scale;
    return z;
}

/// (sum_{j<=k} |w_j/w_{n+1}|^2) / (1 + sum_{j<=n} |w_j/w_{n+1}|^2) from the
/// n+1 squared moduli |w_j|^2. Shared by the exact and floating paths.
template <typename T>
T trace_ratio(std::span<const T> squared_moduli, unsigned k) {
    const std::size_t n = squared_moduli.size() - 1;
    const T& last = squared_moduli[n];
    if (last == T(0)) throw std::invalid_argument("trace_action: w_{n+1} = 0 is on the excluded hyperplane");
    T inner(0), all(0);
    for (std::size_t j = 0; j < n; ++j) {
        T ratio = squared_moduli[j] / last;
        if (j < k) inner += ratio;
        all += ratio;
    }
    return inner / (T(1) + all);
}

namespace detail {
inline void check_trace_args(unsigned n, unsigned k, std::size_t coords) {
    if (k < 1 || k > n) throw std::invalid_argument("trace_action: k must satisfy 1 <= k <= n");
    if (coords != n + 1)
        throw std::invalid_argument("trace_action: expected " + std::to_string(n + 1) + " homogeneous coordinates");
}
} // namespace detail

/// Exact path: the symplectic area enclosed by the trace sphere as a multiple
/// of pi^k / k!, given rational squared moduli |w_1|^2, ..., |w_{n+1}|^2.
inline Rational trace_action_exact(unsigned n, unsigned k, std::span<const Rational> squared_moduli) {
    detail::check_trace_args(n, k, squared_moduli.size());
    for (const auto& s : squared_moduli)
        if (s.sign() < 0) throw std::invalid_argument("trace_action: squared modulus must be nonnegative");
    return pow(trace_ratio(squared_moduli, k), k);
}

/// Floating path: (pi^k / k!) * ratio^k.
inline double trace_action(unsigned n, unsigned k, const HomogeneousPoint& w) {
    detail::check_trace_args(n, k, w.coords.size());
    std::vector<double> sq(w.coords.size());
    for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = std::norm(w.coords[j]);
    const double ratio = trace_ratio<double>(sq, k);
    return std::pow(std::numbers::pi, k) / factorial(k).convert_to<double>() * std::pow(ratio, k);
}

} // namespace weincalc
