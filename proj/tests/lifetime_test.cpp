#include <gtest/gtest.h>

#include <random>

#include <qwin/lifetime.hpp>

#include "oracles.hpp"

using namespace qwin;

namespace {

SimulationParams params(double p, WindowConfig w, std::size_t max_cycles = 1000)
{
    SimulationParams sp;
    sp.p = p;
    sp.window = w;
    sp.max_cycles = max_cycles;
    sp.decoder.max_iterations = 30;
    return sp;
}

} // namespace

TEST(SimulationParams, Validation)
{
    auto sp = params(0.01, {3, 1});
    EXPECT_NO_THROW(sp.validate());
    sp.p = 0.0;
    EXPECT_THROW(sp.validate(), std::invalid_argument);
    sp = params(0.01, {1, 2});
    EXPECT_THROW(sp.validate(), std::invalid_argument);
    sp = params(0.01, {1, 1}, 0);
    EXPECT_THROW(sp.validate(), std::invalid_argument);
}

TEST(Lifetime, HeavyNoiseFailsImmediately)
{
    auto code = hgp(BinaryMatrix::from_strings({"11"}));
    std::size_t immediate = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto o = run_trial(code, params(0.5, {1, 1}), 1, t);
        ASSERT_FALSE(o.censored());
        EXPECT_EQ(o.lifetime, *o.failed_at_cycle - 1);
        immediate += o.lifetime == 0;
    }
    EXPECT_GT(immediate, 10u);
}

TEST(Lifetime, TinyNoiseIsCensored)
{
    auto code = load_fixture("hgp_625");
    auto o = run_trial(code, params(1e-6, {3, 1}, 100), 1, 0);
    EXPECT_TRUE(o.censored());
    EXPECT_EQ(o.rounds_simulated, 100u);
}

TEST(Lifetime, AccountingUsesOffset)
{
    auto code = load_fixture("hgp_625");
    for (WindowConfig w : {WindowConfig{1, 1}, WindowConfig{2, 2}, WindowConfig{3, 1}}) {
        TrialRunner runner(code, params(0.03, w));
        for (std::uint64_t t = 0; t < 3; ++t) {
            auto o = runner.run(2, t);
            ASSERT_FALSE(o.censored());
            EXPECT_EQ(o.lifetime, (*o.failed_at_cycle - 1) * w.offset);
            EXPECT_EQ(o.rounds_simulated, *o.failed_at_cycle * w.offset);
        }
    }
}

TEST(Lifetime, DeterministicPerTrialKey)
{
    auto code = load_fixture("hgp_625");
    auto sp = params(0.01, {2, 1});
    TrialRunner a(code, sp), b(code, sp);
    for (std::uint64_t t = 0; t < 3; ++t) {
        auto x = a.run(7, t);
        EXPECT_EQ(x, b.run(7, t));
        EXPECT_EQ(x, a.run(7, t));
    }
}

TEST(Lifetime, IdealFailureIsStableUnderStabilizers)
{
    std::mt19937_64 rng(51);
    auto code = load_fixture("hgp_625");
    TrialRunner runner(code, params(0.01, {1, 1}));
    std::size_t failures = 0;
    for (int t = 0; t < 40; ++t) {
        auto r = oracle::random_bits(code.n, rng, 0.012);
        std::vector<std::uint8_t> residual(r.begin(), r.end());
        bool verdict = runner.ideal_failure(residual);
        EXPECT_EQ(runner.ideal_failure(residual), verdict);
        failures += verdict;
        auto shifted = residual;
        for (auto q : code.hx.row(rng() % code.hx.rows()))
            shifted[q] ^= 1u;
        EXPECT_EQ(runner.ideal_failure(shifted), verdict) << t;
    }
    std::vector<std::uint8_t> zero(code.n, 0);
    EXPECT_FALSE(runner.ideal_failure(zero));
}

TEST(Lifetime, ZSideUsesSwappedChecks)
{
    auto code = load_fixture("hgp_625");
    auto sp = params(0.01, {1, 1});
    sp.side = ErrorSide::z;
    TrialRunner runner(code, sp);
    EXPECT_EQ(runner.code().hz, code.hx);
    EXPECT_EQ(runner.code().k, code.k);
}

TEST(Summary, CensoredAndSingleSample)
{
    std::vector<TrialOutcome> all_censored(3);
    for (std::size_t i = 0; i < 3; ++i)
        all_censored[i].trial = i;
    auto est = summarize(all_censored, 2, 50);
    EXPECT_TRUE(est.lower_bound);
    EXPECT_EQ(est.censored, 3u);
    EXPECT_DOUBLE_EQ(est.mean_T, 100.0);

    std::vector<TrialOutcome> one{TrialOutcome{0, 5, 4, 5}};
    auto single = summarize(one, 1, 50);
    EXPECT_TRUE(single.single_sample);
    EXPECT_DOUBLE_EQ(single.std_error, 0.0);
    EXPECT_DOUBLE_EQ(single.mean_T, 4.0);
}

TEST(Summary, MeanAndStandardErrorExcludeCensored)
{
    std::vector<TrialOutcome> outs{TrialOutcome{0, 3, 2, 3}, TrialOutcome{1, 5, 4, 5},
                                   TrialOutcome{2, 7, 6, 7}, TrialOutcome{3, std::nullopt, 0, 100}};
    auto est = summarize(outs, 1, 100);
    EXPECT_EQ(est.censored, 1u);
    EXPECT_DOUBLE_EQ(est.mean_T, 4.0);
    // sample variance 4, three samples
    EXPECT_NEAR(est.std_error, std::sqrt(4.0 / 3.0), 1e-12);
    EXPECT_FALSE(est.lower_bound);
}

TEST(Estimate, WorkerCountDoesNotChangeResults)
{
    auto code = load_fixture("hgp_625");
    auto sp = params(0.02, {2, 1});
    auto one = estimate_lifetime(code, sp, 6, 11, 1);
    auto three = estimate_lifetime(code, sp, 6, 11, 3);
    EXPECT_EQ(one.outcomes, three.outcomes);
    EXPECT_EQ(one.mean_T, three.mean_T);
    EXPECT_EQ(one.std_error, three.std_error);
    EXPECT_THROW(estimate_lifetime(code, sp, 0, 11, 1), std::invalid_argument);
}

TEST(Estimate, MinOverCopies)
{
    std::vector<TrialOutcome> outs{TrialOutcome{0, 4, 3, 4}, TrialOutcome{1, 2, 1, 2},
                                   TrialOutcome{2, std::nullopt, 0, 9}, TrialOutcome{3, std::nullopt, 0, 9}};
    auto blocks = min_over_copies(outs, 2);
    ASSERT_EQ(blocks.size(), 2u);
    EXPECT_EQ(blocks[0].lifetime, 1u);
    EXPECT_TRUE(blocks[1].censored());
    EXPECT_THROW(min_over_copies(outs, 3), std::invalid_argument);
}

TEST(Volume, Identities)
{
    EXPECT_EQ(decoding_volume(4, 625, 25), 1200u);
    EXPECT_EQ(decoding_volume(1, 2500, 100), 1200u);
    EXPECT_EQ(decoding_volume(1, 12, 10), 1u);
    EXPECT_THROW(decoding_volume(0, 625, 25), std::invalid_argument);
    EXPECT_THROW(decoding_volume(1, 10, 7), std::invalid_argument);
    EXPECT_THROW(decoding_volume(1, 10, 10), std::invalid_argument);
}

TEST(Estimate, EarlyStoppedBlocksMatchMinOverCopies)
{
    auto code = load_fixture("hgp_625");
    auto sp = params(0.025, {2, 1});
    TrialRunner runner(code, sp);
    std::vector<TrialOutcome> full;
    for (std::uint64_t t = 0; t < 12; ++t)
        full.push_back(runner.run(13, t));
    auto expected = min_over_copies(full, 4);
    for (std::uint64_t b = 0; b < 3; ++b)
        EXPECT_EQ(run_block(runner, 4, 13, b), expected[b]) << b;
    auto limited = runner.run(13, 0, 1);
    EXPECT_EQ(limited.rounds_simulated, 1u);
    EXPECT_THROW(run_block(runner, 0, 13, 0), std::invalid_argument);
}
