#pragma once

#include <cstdint>
#include <cmath>

#include "subex/common.hpp"

namespace subex {

// Counter-based splittable generator (splitmix64 finalizer over key + counter).
// Every stochastic operation takes an explicit seed; there is no global state,
// and streams derived via split() are independent of draw order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL))) {}

    Rng split(std::uint64_t i) const {
        Rng r(0);
        r.key_ = mix(key_ ^ mix(i + 0x94d049bb133111ebULL));
        r.ctr_ = 0;
        return r;
    }

    std::uint64_t next_u64() { return mix(key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Uniform on {0, ..., n-1}.
    std::size_t index(std::size_t n) { return std::size_t(uniform01() * double(n)) % n; }

    double normal() {
        double u1 = uniform01(), u2 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace subex
