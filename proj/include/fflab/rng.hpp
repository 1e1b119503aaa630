#pragma once

// Deterministic randomness. Everything random in the library flows through
// Rng so that a (seed, stream) pair reproduces byte-identical runs; the
// distributions are implemented by hand because the std:: ones are not
// pinned down by the standard.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace fflab {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    // Independent, reproducible child stream.
    Rng child(std::uint64_t stream) const {
        std::uint64_t z = seed_ + (stream + 1) * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t bits() { return gen_(); }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = gen_();
            if (r >= threshold) return r % n;
        }
    }

    long int_in(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        // Box-Muller; the sine branch is dropped to keep the stream simple.
        double u1 = u01(), u2 = u01();
        while (u1 <= 0.0) u1 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    std::complex<double> complex_gaussian() {
        double u1 = u01(), u2 = u01();
        while (u1 <= 0.0) u1 = u01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 6.283185307179586476925287 * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace fflab
