#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace bsvi {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// Output is a pure function of (key, counter); draws are addressed by
// (path, step, slot), so path generation is deterministic under any
// parallel schedule.
namespace philox {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
    constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(m0, ctr[0], hi0, lo0);
        mulhilo(m1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += w0;
        key[1] += w1;
    }
    return ctr;
}

}  // namespace philox

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stateless stream of uniforms/normals addressed by (path, step, slot).
// Distinct (seed, stream) pairs give independent streams.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0) {
        const std::uint64_t k = splitmix64(seed ^ splitmix64(stream));
        key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    }

    // Uniform on (0,1), never returning an endpoint.
    double uniform(std::uint64_t path, std::uint64_t step, std::uint32_t slot) const {
        const auto r = raw(path, step, slot);
        const std::uint64_t bits =
            (static_cast<std::uint64_t>(r[0]) << 32 | r[1]) >> 11;  // 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    // Pair of independent standard normals (Box-Muller); one block per pair.
    void normal_pair(std::uint64_t path, std::uint64_t step, std::uint32_t slot, double& n0,
                     double& n1) const {
        const auto r = raw(path, step, slot);
        const std::uint64_t b1 =
            (static_cast<std::uint64_t>(r[0]) << 32 | r[1]) >> 11;
        const std::uint64_t b2 =
            (static_cast<std::uint64_t>(r[2]) << 32 | r[3]) >> 11;
        const double u1 = (static_cast<double>(b1) + 0.5) * 0x1.0p-53;
        const double u2 = (static_cast<double>(b2) + 0.5) * 0x1.0p-53;
        const double rad = std::sqrt(-2.0 * std::log(u1));
        n0 = rad * std::cos(2.0 * M_PI * u2);
        n1 = rad * std::sin(2.0 * M_PI * u2);
    }

    double normal(std::uint64_t path, std::uint64_t step, std::uint32_t slot) const {
        double n0, n1;
        normal_pair(path, step, slot, n0, n1);
        return n0;
    }

    std::array<std::uint32_t, 4> raw(std::uint64_t path, std::uint64_t step,
                                     std::uint32_t slot) const {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32),
            static_cast<std::uint32_t>(step), slot};
        return philox::block(ctr, key_);
    }

private:
    std::array<std::uint32_t, 2> key_;
};

}  // namespace bsvi
