#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace voa {

// Derives an independent stream seed from the run seed and a stream name.
// Adding a new named stream never perturbs draws from existing streams.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream_name);

// Deterministic random stream. All samplers are implemented in-house on top
// of mt19937_64 so sequences are stable across standard libraries.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::string_view stream_name);

    double uniform();                      // [0, 1)
    double normal();                       // standard normal, Box-Muller
    double von_mises(double mu, double kappa); // wrapped to (-pi, pi]
    // Index drawn from unnormalized nonnegative weights.
    std::size_t categorical(std::span<const double> weights);

private:
    std::mt19937_64 engine_;
};

} // namespace voa
