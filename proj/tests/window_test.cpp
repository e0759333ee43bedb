#include <gtest/gtest.h>

#include <random>

#include <qwin/codes.hpp>
#include <qwin/noise.hpp>
#include <qwin/window.hpp>

#include "oracles.hpp"

using namespace qwin;

namespace {

DecoderConfig capped(std::size_t iterations = 50)
{
    DecoderConfig c;
    c.max_iterations = iterations;
    return c;
}

} // namespace

TEST(WindowConfig, RequiresOffsetWithinWidth)
{
    EXPECT_THROW((WindowConfig{3, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((WindowConfig{3, 4}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((WindowConfig{3, 3}.validate()));
    EXPECT_THROW(build_window_matrix(BinaryMatrix::from_strings({"11"}), 0), std::invalid_argument);
}

TEST(WindowMatrix, WidthOneIsCheckMatrixBesideIdentity)
{
    auto h = BinaryMatrix::from_strings({"1101", "0111", "1010"});
    auto wm = build_window_matrix(h, 1);
    EXPECT_EQ(wm.h_win, hstack(h, BinaryMatrix::identity(3)));
}

TEST(WindowMatrix, ShapeAndMeasurementBlocks)
{
    auto h = BinaryMatrix::from_strings({"1101", "0111", "1010"});
    const std::size_t m = 3, n = 4, W = 3;
    auto wm = build_window_matrix(h, W);
    EXPECT_EQ(wm.h_win.rows(), W * m);
    EXPECT_EQ(wm.h_win.cols(), W * n + W * m);
    EXPECT_EQ(wm.variables(), W * (n + m));
    for (std::size_t t = 0; t < W; ++t)
        for (std::size_t c = 0; c < m; ++c) {
            std::vector<std::size_t> hit;
            for (std::size_t row = 0; row < W * m; ++row)
                if (wm.h_win.test(row, wm.measurement_column(t, c)))
                    hit.push_back(row);
            std::vector<std::size_t> expect{t * m + c};
            if (t + 1 < W)
                expect.push_back((t + 1) * m + c);
            EXPECT_EQ(hit, expect);
        }
    for (std::size_t t = 0; t < W; ++t)
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t row = 0; row < W * m; ++row)
                EXPECT_EQ(wm.h_win.test(row, wm.data_column(t, q)),
                          row / m == t && h.test(row % m, q));
}

TEST(WindowMatrix, FullRowRank)
{
    std::mt19937_64 rng(41);
    for (int t = 0; t < 20; ++t) {
        std::size_t m = 1 + rng() % 8, n = 1 + rng() % 10, W = 1 + rng() % 5;
        auto h = oracle::to_matrix(oracle::random_dense(m, n, rng), n);
        EXPECT_EQ(rank(build_window_matrix(h, W).h_win), W * m);
    }
    auto h = load_fixture("hgp_625").hz;
    EXPECT_EQ(rank(build_window_matrix(h, 3).h_win), 3 * h.rows());
}

TEST(WindowMatrix, MatchesIndependentlyDifferencedSyndromes)
{
    std::mt19937_64 rng(42);
    for (int t = 0; t < 100; ++t) {
        std::size_t m = 1 + rng() % 6, n = 1 + rng() % 8, W = 1 + rng() % 5;
        auto hd = oracle::random_dense(m, n, rng);
        auto h = oracle::to_matrix(hd, n);
        std::vector<oracle::Bits> e(W), u(W);
        oracle::Bits stacked;
        for (std::size_t r = 0; r < W; ++r) {
            e[r] = oracle::random_bits(n, rng, 0.3);
            stacked.insert(stacked.end(), e[r].begin(), e[r].end());
        }
        for (std::size_t r = 0; r < W; ++r) {
            u[r] = oracle::random_bits(m, rng, 0.3);
            stacked.insert(stacked.end(), u[r].begin(), u[r].end());
        }
        // sigma_t = H (e_1 + ... + e_t) + u_t, then sigma_t - sigma_{t-1}.
        oracle::Bits cumulative(n, 0), previous(m, 0), expected;
        for (std::size_t r = 0; r < W; ++r) {
            cumulative = oracle::add(cumulative, e[r]);
            auto sigma = oracle::add(oracle::mat_vec(hd, cumulative), u[r]);
            auto d = oracle::add(sigma, previous);
            expected.insert(expected.end(), d.begin(), d.end());
            previous = sigma;
        }
        auto wm = build_window_matrix(h, W);
        EXPECT_EQ(oracle::to_bits(mat_vec(wm.h_win, oracle::to_vector(stacked))), expected);
    }
}

TEST(DiffSyndromes, Examples)
{
    auto s = BinaryVector::from_string("1011");
    std::vector<BinaryVector> same{s, s, s};
    auto d = diff_syndromes(same);
    EXPECT_EQ(d[0], s);
    EXPECT_TRUE(d[1].is_zero());
    EXPECT_TRUE(d[2].is_zero());
    std::vector<BinaryVector> one{s};
    EXPECT_EQ(diff_syndromes(one)[0], s);
    std::vector<BinaryVector> bad{s, BinaryVector(3)};
    EXPECT_THROW(diff_syndromes(bad), std::invalid_argument);
}

TEST(DiffSyndromes, CumulativeSumInverts)
{
    std::mt19937_64 rng(43);
    for (int t = 0; t < 50; ++t) {
        std::vector<BinaryVector> sigmas;
        for (int k = 0; k < 3; ++k)
            sigmas.push_back(oracle::to_vector(oracle::random_bits(9, rng)));
        auto d = diff_syndromes(sigmas);
        BinaryVector acc(9);
        for (int k = 0; k < 3; ++k) {
            acc ^= d[k];
            EXPECT_EQ(acc, sigmas[k]);
        }
    }
}

TEST(WindowDecoder, NoiselessInputCommitsNothing)
{
    auto code = load_fixture("hgp_625");
    WindowDecoder dec(code.hz, {3, 1}, 0.01, capped());
    auto state = dec.initial_state();
    for (int c = 0; c < 4; ++c) {
        std::vector<BinaryVector> zeros(dec.syndromes_needed(state), BinaryVector(code.hz.rows()));
        auto r = dec.cycle(state, zeros);
        EXPECT_TRUE(r.commit.is_zero());
        EXPECT_EQ(state.buffered.size(), 2u);
        for (const auto& b : state.buffered)
            EXPECT_TRUE(b.is_zero());
    }
    EXPECT_EQ(state.rounds_elapsed, 4u);
    EXPECT_EQ(state.cycles, 4u);
}

TEST(WindowDecoder, RejectsWrongSyndromeCount)
{
    auto code = load_fixture("hgp_625");
    WindowDecoder dec(code.hz, {3, 1}, 0.01, capped());
    auto state = dec.initial_state();
    std::vector<BinaryVector> two(2, BinaryVector(code.hz.rows()));
    EXPECT_THROW(dec.cycle(state, two), std::invalid_argument);
    std::vector<BinaryVector> wrong_len(3, BinaryVector(5));
    EXPECT_THROW(dec.cycle(state, wrong_len), std::invalid_argument);
    EXPECT_EQ(state.cycles, 0u);
}

TEST(WindowDecoder, SingleDataErrorIsCommittedAndSyndromesCleared)
{
    auto code = load_fixture("hgp_625");
    const auto& h = code.hz;
    WindowDecoder dec(h, {3, 1}, 0.01, capped());
    auto state = dec.initial_state();
    BinaryVector e(code.n, {123});
    BinaryVector no_u(h.rows());
    std::vector<BinaryVector> sigmas;
    for (int t = 0; t < 3; ++t)
        sigmas.push_back(synthesize_syndrome(h, e, no_u));
    auto r = dec.cycle(state, sigmas);
    EXPECT_EQ(r.commit, e);
    ASSERT_EQ(state.buffered.size(), 2u);
    // Replaying the corrected history e + xi gives zero syndromes.
    for (const auto& b : state.buffered) {
        EXPECT_TRUE(b.is_zero());
        EXPECT_EQ(b, synthesize_syndrome(h, e ^ r.commit, no_u));
    }
}

TEST(WindowDecoder, SoundnessOfCarriedSyndromes)
{
    auto code = load_fixture("hgp_625");
    const auto& h = code.hz;
    const NoiseParams noise(0.01);
    for (WindowConfig cfg : {WindowConfig{3, 1}, WindowConfig{4, 2}, WindowConfig{2, 2}}) {
        WindowDecoder dec(h, cfg, 0.01, capped());
        auto state = dec.initial_state();
        BinaryVector physical(code.n);
        std::vector<BinaryVector> history;
        std::vector<BinaryVector> us;
        std::uint64_t round = 0;
        for (int c = 0; c < 6; ++c) {
            std::vector<BinaryVector> measured;
            for (std::size_t k = 0; k < dec.syndromes_needed(state); ++k) {
                auto s = sample_round(code.n, h.rows(), noise, {5, 0, ++round});
                physical ^= s.e;
                history.push_back(s.e);
                us.push_back(s.u);
                measured.push_back(synthesize_syndrome(h, physical, s.u));
            }
            auto r = dec.cycle(state, measured);

            // Window contract: H (sum_{j<=t} e~_j) + u~_t equals the window's sigma_t.
            const auto& wm = dec.matrix();
            BinaryVector acc(code.n);
            for (std::size_t t = 0; t < cfg.width; ++t) {
                acc ^= r.decode.estimate.slice(t * code.n, code.n);
                auto ut = r.decode.estimate.slice(wm.width * code.n + t * h.rows(), h.rows());
                EXPECT_EQ(mat_vec(h, acc) ^ ut, r.window[t]);
            }

            // Retained sigma' equal the syndromes of the true history plus all commits.
            ASSERT_EQ(state.buffered.size(), cfg.width - cfg.offset);
            for (std::size_t t = 0; t < state.buffered.size(); ++t) {
                std::size_t absolute = state.rounds_elapsed + t;  // 0-based round index
                BinaryVector sum(code.n);
                for (std::size_t i = 0; i <= absolute; ++i)
                    sum ^= history[i];
                EXPECT_EQ(state.buffered[t],
                          synthesize_syndrome(h, sum ^ state.cumulative_correction, us[absolute]));
            }

            // Residual bookkeeping against an independent accumulator.
            std::vector<BinaryVector> committed(history.begin(), history.begin() + state.rounds_elapsed);
            BinaryVector independent = state.cumulative_correction;
            for (const auto& e : committed)
                independent ^= e;
            EXPECT_EQ(residual_error(state, committed), independent);
        }
    }
}

TEST(WindowDecoder, WidthOneMatchesSingleShot)
{
    auto code = load_fixture("hgp_625");
    const auto& h = code.hz;
    const NoiseParams noise(0.01);
    WindowDecoder window(h, {1, 1}, 0.01, capped());
    SingleShotDecoder single(h, 0.01, capped());
    for (std::uint64_t t = 0; t < 100; ++t) {
        auto s = sample_round(code.n, h.rows(), noise, {9, t, 1});
        auto sigma = synthesize_syndrome(h, s.e, s.u);
        auto state = window.initial_state();
        std::vector<BinaryVector> one{sigma};
        EXPECT_EQ(window.cycle(state, one).commit, single.decode(sigma)) << t;
    }
}

TEST(Residual, ZeroNoiseGivesZeroResidual)
{
    auto code = load_fixture("hgp_625");
    WindowDecoder dec(code.hz, {2, 1}, 0.01, capped());
    auto state = dec.initial_state();
    std::vector<BinaryVector> history;
    for (int c = 0; c < 3; ++c) {
        std::vector<BinaryVector> zeros(dec.syndromes_needed(state), BinaryVector(code.hz.rows()));
        dec.cycle(state, zeros);
    }
    history.assign(state.rounds_elapsed, BinaryVector(code.n));
    EXPECT_TRUE(residual_error(state, history).is_zero());
    history.pop_back();
    EXPECT_THROW(residual_error(state, history), std::invalid_argument);
}
