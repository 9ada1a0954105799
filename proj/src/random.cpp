#include "voa/random.hpp"

#include "voa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace voa {
namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream_name)
{
    return splitmix64(seed ^ fnv1a(stream_name));
}

RandomStream::RandomStream(std::uint64_t seed, std::string_view stream_name)
    : engine_(derive_seed(seed, stream_name))
{
}

double RandomStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal()
{
    // Box-Muller; consumes two uniforms, returns one variate.
    double u1 = uniform();
    while (u1 == 0.0)
        u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::von_mises(double mu, double kappa)
{
    if (kappa < 0.0)
        throw InputError("von Mises kappa must be nonnegative");
    const double pi = std::numbers::pi;
    double theta;
    if (kappa < 1e-8) {
        theta = mu + pi * (2.0 * uniform() - 1.0);
    } else {
        // Best-Fisher rejection sampling.
        const double r = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double rho = (r - std::sqrt(2.0 * r)) / (2.0 * kappa);
        const double s = (1.0 + rho * rho) / (2.0 * rho);
        double f = 0.0;
        for (;;) {
            const double z = std::cos(pi * uniform());
            f = (1.0 + s * z) / (s + z);
            const double c = kappa * (s - f);
            const double u2 = uniform();
            if (c * (2.0 - c) - u2 > 0.0)
                break;
            if (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0)
                break;
        }
        const double sign = uniform() > 0.5 ? 1.0 : -1.0;
        theta = mu + sign * std::acos(std::clamp(f, -1.0, 1.0));
    }
    // Wrap to (-pi, pi].
    theta = std::fmod(theta, 2.0 * pi);
    if (theta <= -pi)
        theta += 2.0 * pi;
    else if (theta > pi)
        theta -= 2.0 * pi;
    return theta;
}

std::size_t RandomStream::categorical(std::span<const double> weights)
{
    if (weights.empty())
        throw InputError("categorical draw needs at least one weight");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0)
            throw InputError("categorical weights must be nonnegative");
        total += w;
    }
    if (total <= 0.0)
        throw InputError("categorical weights must not all be zero");
    const double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc)
            return i;
    }
    return weights.size() - 1;
}

} // namespace voa
