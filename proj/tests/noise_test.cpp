#include <gtest/gtest.h>

#include <cmath>

#include <qwin/codes.hpp>
#include <qwin/noise.hpp>

#include "oracles.hpp"

using namespace qwin;

TEST(Noise, RejectsRatesOutsideUnitInterval)
{
    EXPECT_THROW(NoiseParams(-0.1), std::invalid_argument);
    EXPECT_THROW(NoiseParams(1.5), std::invalid_argument);
    EXPECT_THROW(NoiseParams(std::nan("")), std::invalid_argument);
}

TEST(Noise, DegenerateRates)
{
    auto zero = sample_round(100, 80, NoiseParams(0.0), {1, 2, 3});
    EXPECT_TRUE(zero.e.is_zero());
    EXPECT_TRUE(zero.u.is_zero());
    auto one = sample_round(100, 80, NoiseParams(1.0), {1, 2, 3});
    EXPECT_EQ(one.e.weight(), 100u);
    EXPECT_EQ(one.u.weight(), 80u);
}

TEST(Noise, EmpiricalRate)
{
    std::size_t flips = 0, total = 0;
    for (std::uint64_t round = 0; round < 200; ++round) {
        auto s = sample_round(1000, 500, NoiseParams(0.1), {7, 0, round});
        flips += s.e.weight() + s.u.weight();
        total += 1500;
    }
    // 300000 draws: standard deviation of the rate is about 5.5e-4.
    EXPECT_NEAR(static_cast<double>(flips) / static_cast<double>(total), 0.1, 0.003);
}

TEST(Noise, DeterministicPerKeyAndDistinctAcrossKeys)
{
    NoiseParams p(0.2);
    auto a = sample_round(300, 200, p, {1, 2, 3});
    auto b = sample_round(300, 200, p, {1, 2, 3});
    EXPECT_EQ(a.e, b.e);
    EXPECT_EQ(a.u, b.u);
    EXPECT_NE(sample_round(300, 200, p, {1, 2, 4}).e, a.e);
    EXPECT_NE(sample_round(300, 200, p, {1, 3, 3}).e, a.e);
    EXPECT_NE(sample_round(300, 200, p, {2, 2, 3}).e, a.e);
}

TEST(Noise, SyndromeSynthesisIsLinear)
{
    auto code = load_fixture("hgp_625");
    const auto& h = code.hz;
    NoiseParams p(0.05);
    for (std::uint64_t r = 0; r < 20; ++r) {
        auto s1 = sample_round(h.cols(), h.rows(), p, {3, 0, r});
        auto s2 = sample_round(h.cols(), h.rows(), p, {3, 1, r});
        BinaryVector zero_u(h.rows());
        auto lhs = synthesize_syndrome(h, s1.e ^ s2.e, s1.u ^ s2.u);
        auto rhs = synthesize_syndrome(h, s1.e, s1.u) ^ synthesize_syndrome(h, s2.e, s2.u);
        EXPECT_EQ(lhs, rhs);
        auto direct = oracle::add(oracle::mat_vec(oracle::to_dense(h), oracle::to_bits(s1.e)),
                                  oracle::to_bits(s1.u));
        EXPECT_EQ(oracle::to_bits(synthesize_syndrome(h, s1.e, s1.u)), direct);
        EXPECT_EQ(synthesize_syndrome(h, s1.e, zero_u), mat_vec(h, s1.e));
    }
    EXPECT_THROW(synthesize_syndrome(h, BinaryVector(h.cols()), BinaryVector(3)), std::invalid_argument);
}
