#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace weincalc {

/// SplitMix64 (Steele, Lea, Flood 2014). Used only to expand seeds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman & Vigna). Stream semantics: the generator for
/// (seed, stream) is seeded with four consecutive SplitMix64 outputs started
/// at seed ^ (stream * 0xd1342543de82ef95). Monte Carlo chunk c uses stream c.
/// Uniforms take the top 53 bits; normals use Box-Muller with the sine
/// variate cached. No std:: distributions, so streams are identical on every
/// platform with IEEE doubles and a correctly rounded libm log/sqrt/sin/cos.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    Xoshiro256(std::uint64_t seed, std::uint64_t stream = 0) {
        SplitMix64 sm(seed ^ (stream * 0xd1342543de82ef95ULL));
        for (auto& s : s_) s = sm.next();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1).
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace weincalc
