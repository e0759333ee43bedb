#pragma once

// Monte Carlo memory lifetime.
//
// A trial runs noisy EC cycles until the residual error
//     r = Σ_{i ≤ N·F} e_i + Σ_{j ≤ N} ξ_j
// is no longer correctable by an ideal (noiseless-syndrome) decode, i.e.
// until r + D_ideal(H r) is a nontrivial logical. Failure at cycle N gives
// lifetime T = (N − 1)·F.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bposd.hpp"
#include "codes.hpp"
#include "noise.hpp"
#include "window.hpp"

namespace qwin {

enum class ErrorSide { x, z };

struct SimulationParams {
    double p = 0.0;
    WindowConfig window;
    DecoderConfig decoder;
    /// Uniform prior of the ideal decoder over the n data variables.
    double ideal_prior = 1e-2;
    std::size_t max_cycles = 100000;
    /// x: X errors against H_Z (default); z: the same machinery with H_X.
    ErrorSide side = ErrorSide::x;

    void validate() const
    {
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("SimulationParams: p must lie in (0, 1]");
        if (!(ideal_prior > 0.0 && ideal_prior < 1.0))
            throw std::invalid_argument("SimulationParams: ideal_prior must lie in (0, 1)");
        if (max_cycles < 1)
            throw std::invalid_argument("SimulationParams: max_cycles must be at least 1");
        window.validate();
        decoder.validate();
    }
};

struct TrialOutcome {
    std::uint64_t trial = 0;
    std::optional<std::size_t> failed_at_cycle;  ///< N; empty when censored
    std::size_t lifetime = 0;                    ///< T = (N − 1)·F when failed
    std::size_t rounds_simulated = 0;            ///< committed rounds, N·F

    bool censored() const { return !failed_at_cycle.has_value(); }
    friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

/// The code with X and Z roles exchanged, so Z errors decode against H_X.
inline CssCode dual_code(const CssCode& code)
{
    return CssCode::from_checks(code.hz, code.hx, code.name);
}

/// Simulates trials for one (code, params) point. Holds decoder scratch;
/// one runner per thread.
class TrialRunner {
public:
    TrialRunner(const CssCode& code, const SimulationParams& params,
                std::shared_ptr<const WindowMatrix> matrix = nullptr)
        : code_(params.side == ErrorSide::x ? code : dual_code(code)), params_(params),
          window_(code_.hz,
                  matrix ? std::move(matrix)
                         : std::make_shared<const WindowMatrix>(
                               build_window_matrix(code_.hz, params.window.width)),
                  params.window, params.p, params.decoder),
          ideal_(code_.hz), ideal_priors_(code_.n, params.ideal_prior)
    {
        params_.validate();
    }

    std::shared_ptr<const WindowMatrix> shared_matrix() const { return window_.shared_matrix(); }

    /// Runs until failure or `cycle_limit` cycles (params.max_cycles when
    /// 0); deterministic in (master_seed, trial).
    TrialOutcome run(std::uint64_t master_seed, std::uint64_t trial, std::size_t cycle_limit = 0)
    {
        const std::size_t max_cycles = cycle_limit ? std::min(cycle_limit, params_.max_cycles)
                                                   : params_.max_cycles;
        const std::size_t n = code_.n;
        const std::size_t m = code_.hz.rows();
        const std::size_t F = params_.window.offset;
        const NoiseParams noise(params_.p);

        auto state = window_.initial_state();
        BinaryVector physical(n);               // Σ e over all simulated rounds
        std::vector<std::uint8_t> committed(n, 0);  // Σ e over committed rounds
        std::deque<BinaryVector> pending;       // e of simulated, uncommitted rounds
        std::vector<BinaryVector> measured;
        std::vector<std::uint8_t> residual(n), syndrome(m);
        std::uint64_t round = 0;

        TrialOutcome outcome;
        outcome.trial = trial;
        for (std::size_t cycle = 1; cycle <= max_cycles; ++cycle) {
            measured.clear();
            const std::size_t count = window_.syndromes_needed(state);
            for (std::size_t t = 0; t < count; ++t) {
                auto sample = sample_round(n, m, noise, RngKey{master_seed, trial, ++round});
                physical ^= sample.e;
                measured.push_back(synthesize_syndrome(code_.hz, physical, sample.u));
                pending.push_back(std::move(sample.e));
            }
            window_.cycle(state, measured);
            for (std::size_t j = 0; j < F; ++j) {
                for (auto q : pending.front().support())
                    committed[q] ^= 1u;
                pending.pop_front();
            }

            residual = committed;
            for (auto q : state.cumulative_correction.support())
                residual[q] ^= 1u;
            if (ideal_failure(residual, syndrome)) {
                outcome.failed_at_cycle = cycle;
                outcome.lifetime = (cycle - 1) * F;
                outcome.rounds_simulated = state.rounds_elapsed;
                return outcome;
            }
        }
        outcome.rounds_simulated = state.rounds_elapsed;
        return outcome;
    }

    /// Ideal-decoder test on a residual r: decode H r with no measurement
    /// noise and report whether r + r̃ is a nontrivial logical.
    bool ideal_failure(std::span<const std::uint8_t> residual)
    {
        std::vector<std::uint8_t> syndrome(code_.hz.rows());
        return ideal_failure(residual, syndrome);
    }

    const CssCode& code() const { return code_; }

private:
    bool ideal_failure(std::span<const std::uint8_t> residual, std::vector<std::uint8_t>& syndrome)
    {
        mat_vec_dense(code_.hz, residual, syndrome);
        auto guess = ideal_.decode(std::span<const std::uint8_t>(syndrome), ideal_priors_,
                                   params_.decoder);
        if (!guess.syndrome_consistent)
            return true;
        std::vector<std::uint8_t> v(residual.begin(), residual.end());
        for (auto q : guess.estimate.support())
            v[q] ^= 1u;
        return flips_logical(code_, v);
    }

    CssCode code_;
    SimulationParams params_;
    WindowDecoder window_;
    BpOsdDecoder ideal_;
    std::vector<double> ideal_priors_;
};

inline TrialOutcome run_trial(const CssCode& code, const SimulationParams& params,
                              std::uint64_t master_seed, std::uint64_t trial)
{
    return TrialRunner(code, params).run(master_seed, trial);
}

struct LifetimeEstimate {
    double mean_T = 0.0;     ///< over failed trials; a lower bound when all are censored
    double std_error = 0.0;  ///< sample std / sqrt(failed trials)
    std::size_t trials = 0;
    std::size_t censored = 0;
    bool lower_bound = false;        ///< every trial censored
    bool single_sample = false;      ///< std_error is 0 by convention
    std::vector<TrialOutcome> outcomes;
};

/// Aggregates outcomes; censored trials are counted, never averaged in.
inline LifetimeEstimate summarize(std::vector<TrialOutcome> outcomes, std::size_t offset,
                                  std::size_t max_cycles)
{
    LifetimeEstimate est;
    est.trials = outcomes.size();
    std::vector<double> values;
    for (const auto& o : outcomes) {
        if (o.censored())
            ++est.censored;
        else
            values.push_back(static_cast<double>(o.lifetime));
    }
    if (values.empty()) {
        est.lower_bound = true;
        est.mean_T = static_cast<double>(max_cycles * offset);
    } else {
        double sum = 0.0;
        for (auto v : values)
            sum += v;
        est.mean_T = sum / static_cast<double>(values.size());
        if (values.size() < 2) {
            est.single_sample = true;
        } else {
            double ss = 0.0;
            for (auto v : values)
                ss += (v - est.mean_T) * (v - est.mean_T);
            const double var = ss / static_cast<double>(values.size() - 1);
            est.std_error = std::sqrt(var / static_cast<double>(values.size()));
        }
    }
    est.outcomes = std::move(outcomes);
    return est;
}

/// Runs `trials` independent trials (keys 0..trials-1) on `workers`
/// threads. Output does not depend on the worker count.
inline LifetimeEstimate estimate_lifetime(const CssCode& code, const SimulationParams& params,
                                          std::size_t trials, std::uint64_t master_seed,
                                          std::size_t workers = 1)
{
    if (trials < 1)
        throw std::invalid_argument("estimate_lifetime: trials must be at least 1");
    params.validate();
    workers = std::max<std::size_t>(1, std::min(workers, trials));

    TrialRunner first(code, params);
    auto matrix = first.shared_matrix();
    std::vector<TrialOutcome> outcomes(trials);
    std::atomic<std::size_t> next{0};
    auto work = [&](TrialRunner& runner) {
        for (std::size_t t; (t = next.fetch_add(1)) < trials;)
            outcomes[t] = runner.run(master_seed, t);
    };
    if (workers == 1) {
        work(first);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::unique_ptr<TrialRunner>> runners;
        for (std::size_t w = 1; w < workers; ++w)
            runners.push_back(std::make_unique<TrialRunner>(code, params, matrix));
        for (auto& r : runners)
            pool.emplace_back(work, std::ref(*r));
        work(first);
        for (auto& th : pool)
            th.join();
    }
    return summarize(std::move(outcomes), params.window.offset, params.max_cycles);
}

/// Groups consecutive outcomes into blocks of `copies` independent code
/// blocks. A block fails with its earliest-failing copy.
inline std::vector<TrialOutcome> min_over_copies(const std::vector<TrialOutcome>& outcomes,
                                                 std::size_t copies)
{
    if (copies == 0 || outcomes.size() % copies != 0)
        throw std::invalid_argument("min_over_copies: outcome count must be a multiple of copies");
    std::vector<TrialOutcome> blocks;
    for (std::size_t b = 0; b < outcomes.size(); b += copies) {
        TrialOutcome block;
        block.trial = b / copies;
        for (std::size_t c = 0; c < copies; ++c) {
            const auto& o = outcomes[b + c];
            if (o.censored())
                continue;
            if (block.censored() || o.lifetime < block.lifetime)
                block = TrialOutcome{b / copies, o.failed_at_cycle, o.lifetime, o.rounds_simulated};
        }
        if (block.censored()) {
            for (std::size_t c = 0; c < copies; ++c)
                block.rounds_simulated = std::max(block.rounds_simulated, outcomes[b + c].rounds_simulated);
        }
        blocks.push_back(block);
    }
    return blocks;
}

/// One block of `copies` independent code copies (trial keys
/// block·copies + c), failing with its earliest-failing copy. Each copy is
/// censored at the earliest failure seen so far; this leaves the minimum
/// unchanged, so the result equals min_over_copies of full trials.
inline TrialOutcome run_block(TrialRunner& runner, std::size_t copies, std::uint64_t master_seed,
                              std::uint64_t block)
{
    if (copies == 0)
        throw std::invalid_argument("run_block: copies must be at least 1");
    TrialOutcome best;
    best.trial = block;
    for (std::size_t c = 0; c < copies; ++c) {
        auto o = runner.run(master_seed, block * copies + c, best.failed_at_cycle.value_or(0));
        best.rounds_simulated = std::max(best.rounds_simulated, o.rounds_simulated);
        if (!o.censored() && (best.censored() || o.lifetime < best.lifetime)) {
            best.failed_at_cycle = o.failed_at_cycle;
            best.lifetime = o.lifetime;
            best.rounds_simulated = o.rounds_simulated;
        }
    }
    return best;
}

/// V = W(n − k)/2, the syndrome bits processed per window.
inline std::size_t decoding_volume(std::size_t width, std::size_t n, std::size_t k)
{
    if (width < 1)
        throw std::invalid_argument("decoding_volume: W must be at least 1");
    if (n <= k)
        throw std::invalid_argument("decoding_volume: need n > k");
    if ((n - k) % 2 != 0)
        throw std::invalid_argument("decoding_volume: n - k must be even");
    return width * (n - k) / 2;
}

} // namespace qwin
