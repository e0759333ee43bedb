#pragma once

// Phenomenological noise: each round flips every data qubit and every
// syndrome bit independently with probability p.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gf2.hpp"

namespace qwin {

struct NoiseParams {
    double p = 0.0;

    NoiseParams() = default;
    explicit NoiseParams(double rate) : p(rate)
    {
        if (!(rate >= 0.0 && rate <= 1.0))
            throw std::invalid_argument("NoiseParams: p must lie in [0, 1], got " +
                                        std::to_string(rate));
    }

    // Data and measurement rates are tied together; kept separate internally.
    double data_rate() const { return p; }
    double measurement_rate() const { return p; }
};

/// Identifies one independent random stream: (master seed, trial, round).
struct RngKey {
    std::uint64_t master_seed = 0;
    std::uint64_t trial = 0;
    std::uint64_t round = 0;
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(const RngKey& key)
{
    return splitmix64(splitmix64(splitmix64(key.master_seed) ^ key.trial) ^ key.round);
}

/// Bernoulli(p) from the top 53 bits of one 64-bit draw.
inline bool bernoulli(std::mt19937_64& rng, double p)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

} // namespace detail

struct RoundSample {
    BinaryVector e;  ///< data-qubit flips this round
    BinaryVector u;  ///< syndrome-bit flips this round
};

inline RoundSample sample_round(std::size_t n, std::size_t m, const NoiseParams& params,
                                const RngKey& key)
{
    std::mt19937_64 rng(detail::stream_seed(key));
    std::vector<std::size_t> e, u;
    for (std::size_t i = 0; i < n; ++i)
        if (detail::bernoulli(rng, params.data_rate()))
            e.push_back(i);
    for (std::size_t i = 0; i < m; ++i)
        if (detail::bernoulli(rng, params.measurement_rate()))
            u.push_back(i);
    return {BinaryVector(n, std::move(e)), BinaryVector(m, std::move(u))};
}

/// σ_t = H·(Σ_{j≤t} e_j) + u_t.
inline BinaryVector synthesize_syndrome(const BinaryMatrix& h, const BinaryVector& cumulative_error,
                                        const BinaryVector& measurement_error)
{
    if (measurement_error.size() != h.rows())
        throw std::invalid_argument("synthesize_syndrome: measurement error length differs from check count");
    return mat_vec(h, cumulative_error) ^ measurement_error;
}

} // namespace qwin
