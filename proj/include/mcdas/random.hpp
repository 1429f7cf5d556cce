#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mcdas::sim {

/// Deterministic noise source. mt19937_64 output is fully specified by the
/// standard and the uint64 -> double mapping is explicit, so identical seeds
/// give identical streams on every platform (std::normal_distribution is
/// implementation-defined and deliberately avoided).
class SeededGenerator {
public:
    explicit SeededGenerator(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Zero-mean Gaussian via Box-Muller; one draw consumes two words.
    double gaussian(double sigma) {
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01();
        return sigma * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace mcdas::sim
