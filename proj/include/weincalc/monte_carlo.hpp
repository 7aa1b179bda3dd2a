#pragma once

#include "weincalc/embedding.hpp"
#include "weincalc/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace weincalc {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0; // sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    /// |mean - exact| in units of std_error (infinite if std_error is 0 and they differ).
    [[nodiscard]] double sigma_distance(double exact) const {
        const double d = std::abs(mean - exact);
        if (std_error == 0.0) return d == 0.0 ? 0.0 : INFINITY;
        return d / std_error;
    }
};

struct McOptions {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0x5eed5eedULL;
    unsigned workers = 0; // 0: hardware concurrency
};

/// Samples per RNG stream. Fixed so results do not depend on the worker count.
inline constexpr std::uint64_t mc_chunk_size = 1ULL << 16;

/// Uniform point of the open ball of radius r0 in R^{2n} (out.size() = 2n):
/// Gaussian direction, radius r0 * U^{1/(2n)}. Coordinates (out[2j], out[2j+1])
/// are the real and imaginary parts of z_{j+1}.
inline void sample_ball(std::span<double> out, double r0, Xoshiro256& rng) {
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double& c : out) {
            c = rng.normal();
            norm2 += c * c;
        }
    } while (norm2 == 0.0);
    const double radius = r0 * std::pow(rng.uniform(), 1.0 / static_cast<double>(out.size()));
    const double scale = radius / std::sqrt(norm2);
    for (double& c : out) c *= scale;
}

namespace detail {

struct RunningStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v) {
        ++count;
        const double delta = v - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (v - mean);
    }
    // Chan et al. pairwise combination; called in chunk order only.
    void merge(const RunningStats& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double total = static_cast<double>(count + o.count);
        const double delta = o.mean - mean;
        mean += delta * static_cast<double>(o.count) / total;
        m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
        count += o.count;
    }
};

/// Mean of integrand(point) over `samples` uniform points of B^{2n}(r0).
/// Each worker owns a copy of the integrand.
template <typename Integrand>
McEstimate ball_average(unsigned n, double r0, const McOptions& opt, const Integrand& integrand) {
    if (opt.samples < 1) throw std::invalid_argument("Monte Carlo needs at least one sample");
    const std::uint64_t chunks = (opt.samples + mc_chunk_size - 1) / mc_chunk_size;
    std::vector<RunningStats> partial(chunks);
    std::atomic<std::uint64_t> next{0};

    auto work = [&] {
        Integrand local = integrand;
        std::vector<double> point(2 * n);
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            Xoshiro256 rng(opt.seed, c);
            const std::uint64_t begin = c * mc_chunk_size;
            const std::uint64_t end = std::min(opt.samples, begin + mc_chunk_size);
            RunningStats s;
            for (std::uint64_t i = begin; i < end; ++i) {
                sample_ball(point, r0, rng);
                s.push(local(std::span<const double>(point)));
            }
            partial[c] = s;
        }
    };

    unsigned workers = opt.workers ? opt.workers : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    RunningStats total;
    for (const auto& s : partial) total.merge(s);
    McEstimate out;
    out.mean = total.mean;
    out.samples = total.count;
    out.seed = opt.seed;
    out.std_error = total.count > 1
                        ? std::sqrt(total.m2 / static_cast<double>(total.count - 1)) / std::sqrt(static_cast<double>(total.count))
                        : 0.0;
    return out;
}

inline void squared_moduli(std::span<const double> point, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = point[2 * j] * point[2 * j] + point[2 * j + 1] * point[2 * j + 1];
}

inline double ipow(double base, unsigned e) {
    double out = 1.0;
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

inline double ball_volume(unsigned n, double r0) {
    return std::pow(std::numbers::pi, n) * ipow(r0, 2 * n) / factorial(n).convert_to<double>();
}

inline void check_nk(unsigned n, unsigned k) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("Monte Carlo requires 1 <= k <= n");
}

} // namespace detail

/// Estimate of the integral of (|z_1|^2 + ... + |z_l|^2)^k over B^{2n}(r0), Lebesgue measure.
inline McEstimate mc_ball_moment(unsigned n, unsigned l, unsigned k, double r0, const McOptions& opt = {}) {
    if (n < 1 || l < 1 || l > n) throw std::invalid_argument("mc_ball_moment requires 1 <= l <= n");
    if (k < 1) throw std::invalid_argument("mc_ball_moment requires k >= 1");
    if (!(r0 > 0.0) || !std::isfinite(r0)) throw std::invalid_argument("mc_ball_moment requires r0 > 0");
    McEstimate e = detail::ball_average(n, r0, opt, [l, k](std::span<const double> p) {
        double s = 0.0;
        for (unsigned j = 0; j < 2 * l; ++j) s += p[j] * p[j];
        return detail::ipow(s, k);
    });
    const double vol = detail::ball_volume(n, r0);
    e.mean *= vol;
    e.std_error *= vol;
    return e;
}

/// Average over CP^n of the trace action, sampled through the dense embedding
/// j of the unit ball (uniform on the ball = normalized omega^n / n!).
inline McEstimate mc_cpn_average(unsigned n, unsigned k, const McOptions& opt = {}) {
    detail::check_nk(n, k);
    const double prefactor = std::pow(std::numbers::pi, k) / factorial(k).convert_to<double>();
    return detail::ball_average(n, 1.0, opt, [=, ball_sq = std::vector<double>(n), w_sq = std::vector<double>(n + 1)](
                                            std::span<const double> p) mutable {
        detail::squared_moduli(p, ball_sq);
        embed_squared_moduli(ball_sq, w_sq);
        return prefactor * detail::ipow(trace_ratio<double>(w_sq, k), k);
    });
}

/// Blow-up average: (full-ball integral - integral over B(rho)) / Vol(blow-up),
/// Vol = pi^n (1 - rho^{2n}) / n!, estimated as the unit-ball mean of
/// A * 1[|z| >= rho] / (1 - rho^{2n}).
inline McEstimate mc_blowup_average(unsigned n, unsigned k, double rho, const McOptions& opt = {}) {
    detail::check_nk(n, k);
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("mc_blowup_average requires 0 < rho < 1");
    const double prefactor = std::pow(std::numbers::pi, k) / factorial(k).convert_to<double>();
    const double rho2 = rho * rho;
    const double normalizer = 1.0 / (1.0 - detail::ipow(rho2, n));
    return detail::ball_average(n, 1.0, opt, [=, ball_sq = std::vector<double>(n), w_sq = std::vector<double>(n + 1)](
                                            std::span<const double> p) mutable {
        detail::squared_moduli(p, ball_sq);
        double r2 = 0.0;
        for (double s : ball_sq) r2 += s;
        if (r2 < rho2) return 0.0;
        embed_squared_moduli(ball_sq, w_sq);
        return normalizer * prefactor * detail::ipow(trace_ratio<double>(w_sq, k), k);
    });
}

} // namespace weincalc
