#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace absf::detail {

// xoshiro256** seeded through splitmix64; identical streams on every platform.
class Rng {
public:
    using result_type = std::uint64_t;

    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    {
        std::uint64_t x = seed ^ (stream * 0x9e3779b97f4a7c15ULL) ^ (index * 0xd1b54a32d192ed03ULL);
        for (auto& w : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()()
    {
        const std::uint64_t out = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return out;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Unit-mean exponential, Marsaglia-Tsang ziggurat with 256 layers.
    double exponential()
    {
        const auto& t = tables();
        for (;;) {
            const std::uint64_t bits = (*this)();
            const auto jz = static_cast<std::uint32_t>(bits >> 32);
            const auto iz = static_cast<std::size_t>(bits & 255u);
            if (jz < t.k[iz]) {
                return jz * t.w[iz];
            }
            if (iz == 0) {
                return kR - std::log1p(-uniform());
            }
            const double x = jz * t.w[iz];
            if (t.f[iz] + uniform() * (t.f[iz - 1] - t.f[iz]) < std::exp(-x)) {
                return x;
            }
        }
    }

    bool bernoulli(double p) { return p >= 1.0 || uniform() < p; }

    long long poisson(double mean)
    {
        if (!(mean > 0.0)) {
            return 0;
        }
        std::poisson_distribution<long long> d(mean);
        return d(*this);
    }

private:
    static constexpr double kR = 7.69711747013104972;

    struct Tables {
        std::array<std::uint32_t, 256> k{};
        std::array<double, 256> w{};
        std::array<double, 256> f{};
    };

    static const Tables& tables()
    {
        static const Tables t = [] {
            Tables z;
            const double m = 4294967296.0;
            const double v = 3.949659822581572e-3;
            double d = kR;
            double prev = d;
            const double q = v / std::exp(-d);
            z.k[0] = static_cast<std::uint32_t>(d / q * m);
            z.k[1] = 0;
            z.w[0] = q / m;
            z.w[255] = d / m;
            z.f[0] = 1.0;
            z.f[255] = std::exp(-d);
            for (int i = 254; i >= 1; --i) {
                d = -std::log(v / d + std::exp(-d));
                z.k[i + 1] = static_cast<std::uint32_t>(d / prev * m);
                prev = d;
                z.f[i] = std::exp(-d);
                z.w[i] = d / m;
            }
            return z;
        }();
        return t;
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

} // namespace absf::detail
