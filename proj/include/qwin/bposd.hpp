#pragma once

// Belief propagation over a Tanner graph with ordered-statistics
// post-processing (OSD-0 and the combination sweep).
//
// Log-likelihood ratios are log(P(bit = 0) / P(bit = 1)); positive means
// "probably no error". Messages are passed with a flooding schedule: all
// checks (ascending), then all variables (ascending).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gf2.hpp"

namespace qwin {

enum class BpMethod { product_sum, min_sum };
enum class OsdMode { off, osd0, combination_sweep };

struct DecoderConfig {
    /// 0 selects one iteration per variable node of the decoding matrix.
    std::size_t max_iterations = 0;
    BpMethod bp_method = BpMethod::product_sum;
    double min_sum_scale = 1.0;
    OsdMode osd_mode = OsdMode::combination_sweep;
    std::size_t lambda = 40;
    /// Magnitude bound on every message and posterior LLR.
    double message_clamp = 50.0;

    void validate() const
    {
        if (!(min_sum_scale > 0.0 && min_sum_scale <= 1.0))
            throw std::invalid_argument("DecoderConfig: min_sum_scale must lie in (0, 1]");
        if (!(message_clamp > 0.0))
            throw std::invalid_argument("DecoderConfig: message_clamp must be positive");
    }

    std::size_t iterations_for(std::size_t variables) const
    {
        return max_iterations ? max_iterations : std::max<std::size_t>(variables, 1);
    }
};

struct OsdReport {
    std::vector<std::size_t> ranking;  ///< columns, most likely error first
    std::size_t rank = 0;
    std::size_t osd0_weight = 0;
    std::size_t weight = 0;            ///< weight of the returned solution
};

struct DecodeResult {
    BinaryVector estimate;
    bool syndrome_consistent = false;
    bool bp_converged = false;
    std::size_t bp_iterations = 0;
    std::vector<double> reliabilities;  ///< posterior LLR per variable
    std::optional<OsdReport> osd;       ///< set when OSD ran
};

class InconsistentSyndrome : public std::runtime_error {
public:
    InconsistentSyndrome()
        : std::runtime_error("syndrome is not in the column space of the check matrix")
    {}
};

inline double prior_llr(double p)
{
    return std::log((1.0 - p) / p);
}

namespace detail {

inline std::vector<std::uint8_t> dense_syndrome(const BinaryVector& syndrome, std::size_t rows)
{
    if (syndrome.size() != rows)
        throw std::invalid_argument("decoder: syndrome length " + std::to_string(syndrome.size()) +
                                    " does not match check count " + std::to_string(rows));
    return syndrome.to_dense();
}

} // namespace detail

/// Message-passing decoder bound to one check matrix. Holds per-call
/// scratch; one instance serves one thread at a time.
class BpDecoder {
public:
    explicit BpDecoder(const BinaryMatrix& h)
        : rows_(h.rows()), cols_(h.cols()), check_offsets_(h.rows() + 1, 0)
    {
        for (std::size_t i = 0; i < rows_; ++i) {
            for (auto j : h.row(i))
                edge_var_.push_back(j);
            check_offsets_[i + 1] = edge_var_.size();
        }
        var_offsets_.assign(cols_ + 1, 0);
        for (auto j : edge_var_)
            ++var_offsets_[j + 1];
        std::partial_sum(var_offsets_.begin(), var_offsets_.end(), var_offsets_.begin());
        var_edges_.resize(edge_var_.size());
        std::vector<std::size_t> fill(var_offsets_.begin(), var_offsets_.end() - 1);
        for (std::size_t e = 0; e < edge_var_.size(); ++e)
            var_edges_[fill[edge_var_[e]]++] = e;

        v2c_.resize(edge_var_.size());
        c2v_.resize(edge_var_.size());
        std::size_t max_degree = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            max_degree = std::max(max_degree, check_offsets_[i + 1] - check_offsets_[i]);
        tanh_.resize(max_degree);
        suffix_.resize(max_degree + 1);
        posterior_.resize(cols_);
        hard_.resize(cols_);
        llr_.resize(cols_);
    }

    std::size_t checks() const { return rows_; }
    std::size_t variables() const { return cols_; }

    DecodeResult decode(std::span<const std::uint8_t> syndrome, std::span<const double> priors,
                        const DecoderConfig& config)
    {
        if (syndrome.size() != rows_)
            throw std::invalid_argument("bp_decode: syndrome length does not match check count");
        if (priors.size() != cols_)
            throw std::invalid_argument("bp_decode: prior count does not match variable count");
        config.validate();
        const double clamp = config.message_clamp;

        double last_prior = -1.0, last_llr = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!(priors[j] > 0.0 && priors[j] < 1.0))
                throw std::invalid_argument("bp_decode: priors must lie in (0, 1)");
            if (priors[j] != last_prior) {
                last_prior = priors[j];
                last_llr = std::clamp(prior_llr(priors[j]), -clamp, clamp);
            }
            llr_[j] = last_llr;
            posterior_[j] = llr_[j];
            hard_[j] = llr_[j] < 0.0;
        }
        for (std::size_t e = 0; e < edge_var_.size(); ++e)
            v2c_[e] = llr_[edge_var_[e]];

        DecodeResult result;
        const std::size_t budget = config.iterations_for(cols_);
        bool converged = matches(syndrome);
        std::size_t iter = 0;
        while (!converged && iter < budget) {
            ++iter;
            if (config.bp_method == BpMethod::product_sum)
                update_checks_product_sum(syndrome, clamp);
            else
                update_checks_min_sum(syndrome, config.min_sum_scale, clamp);
            update_variables(clamp);
            converged = matches(syndrome);
        }

        result.bp_converged = converged;
        result.syndrome_consistent = converged;
        result.bp_iterations = iter;
        result.reliabilities.assign(posterior_.begin(), posterior_.end());
        result.estimate = BinaryVector::from_dense(hard_);
        return result;
    }

    DecodeResult decode(const BinaryVector& syndrome, std::span<const double> priors,
                        const DecoderConfig& config)
    {
        auto dense = detail::dense_syndrome(syndrome, rows_);
        return decode(std::span<const std::uint8_t>(dense), priors, config);
    }

private:
    bool matches(std::span<const std::uint8_t> syndrome) const
    {
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint8_t parity = syndrome[i] & 1u;
            for (std::size_t e = check_offsets_[i]; e < check_offsets_[i + 1]; ++e)
                parity ^= hard_[edge_var_[e]];
            if (parity)
                return false;
        }
        return true;
    }

    // Extrinsic check messages 2·atanh(Π tanh(m/2)), with tanh(|m|/2)
    // computed as (1 − e^−|m|)/(1 + e^−|m|) and 2·atanh(y) as log((1+y)/(1−y)).
    // Messages often repeat exactly, so the last argument of each
    // transcendental is remembered.
    void update_checks_product_sum(std::span<const std::uint8_t> syndrome, double clamp)
    {
        double last_abs = -1.0, last_tanh = 0.0;
        double last_y = -1.0, last_mag = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            const std::size_t begin = check_offsets_[i];
            const std::size_t degree = check_offsets_[i + 1] - begin;
            if (degree == 0)
                continue;
            bool negative = syndrome[i] & 1u;
            for (std::size_t k = 0; k < degree; ++k) {
                const double m = v2c_[begin + k];
                negative ^= m < 0.0;
                const double a = std::fabs(m);
                if (a != last_abs) {
                    const double x = std::exp(-a);
                    last_abs = a;
                    last_tanh = (1.0 - x) / (1.0 + x);
                }
                tanh_[k] = last_tanh;
            }
            suffix_[degree] = 1.0;
            for (std::size_t k = degree; k-- > 0;)
                suffix_[k] = suffix_[k + 1] * tanh_[k];
            double prefix = 1.0;
            for (std::size_t k = 0; k < degree; ++k) {
                const double y = std::min(prefix * suffix_[k + 1], kTanhBound);
                prefix *= tanh_[k];
                if (y != last_y) {
                    last_y = y;
                    last_mag = std::min(std::log((1.0 + y) / (1.0 - y)), clamp);
                }
                const double mag = last_mag;
                const bool self_negative = v2c_[begin + k] < 0.0;
                c2v_[begin + k] = (negative != self_negative) ? -mag : mag;
            }
        }
    }

    void update_checks_min_sum(std::span<const std::uint8_t> syndrome, double scale, double clamp)
    {
        for (std::size_t i = 0; i < rows_; ++i) {
            const std::size_t begin = check_offsets_[i];
            const std::size_t end = check_offsets_[i + 1];
            if (begin == end)
                continue;
            double min1 = std::numeric_limits<double>::infinity();
            double min2 = min1;
            std::size_t argmin = begin;
            bool negative = syndrome[i] & 1u;
            for (std::size_t e = begin; e < end; ++e) {
                const double m = v2c_[e];
                negative ^= m < 0.0;
                const double mag = std::fabs(m);
                if (mag < min1) {
                    min2 = min1;
                    min1 = mag;
                    argmin = e;
                } else if (mag < min2) {
                    min2 = mag;
                }
            }
            for (std::size_t e = begin; e < end; ++e) {
                const bool self_negative = v2c_[e] < 0.0;
                const double mag = (e == argmin ? min2 : min1);
                const double out = std::min(scale * mag, clamp);
                c2v_[e] = (negative != self_negative) ? -out : out;
            }
        }
    }

    void update_variables(double clamp)
    {
        for (std::size_t j = 0; j < cols_; ++j) {
            double total = llr_[j];
            for (std::size_t k = var_offsets_[j]; k < var_offsets_[j + 1]; ++k)
                total += c2v_[var_edges_[k]];
            total = std::clamp(total, -clamp, clamp);
            posterior_[j] = total;
            hard_[j] = total < 0.0;
            for (std::size_t k = var_offsets_[j]; k < var_offsets_[j + 1]; ++k) {
                const std::size_t e = var_edges_[k];
                v2c_[e] = std::clamp(total - c2v_[e], -clamp, clamp);
            }
        }
    }

    static constexpr double kTanhBound = 1.0 - 1e-15;

    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::size_t> check_offsets_;
    std::vector<std::size_t> edge_var_;
    std::vector<std::size_t> var_offsets_;
    std::vector<std::size_t> var_edges_;

    std::vector<double> v2c_, c2v_, posterior_, llr_;
    std::vector<std::uint8_t> hard_;
    std::vector<double> tanh_, suffix_;
};

/// Ordered-statistics post-processor bound to one check matrix.
class OsdDecoder {
public:
    explicit OsdDecoder(const BinaryMatrix& h)
        : rows_(h.rows()), cols_(h.cols()), columns_(h.column_supports())
    {}

    /// Ranks columns by ascending reliability (ties: lower index first),
    /// selects an information set by elimination in that order and returns
    /// the lightest candidate among OSD-0 and, for the combination sweep,
    /// all weight-1 flips of non-pivot coordinates and all weight-2 flips
    /// within the first `lambda` non-pivot coordinates.
    DecodeResult process(std::span<const std::uint8_t> syndrome, std::span<const double> reliabilities,
                         const DecoderConfig& config)
    {
        if (syndrome.size() != rows_)
            throw std::invalid_argument("osd: syndrome length does not match check count");
        if (reliabilities.size() != cols_)
            throw std::invalid_argument("osd: reliability count does not match variable count");

        OsdReport report;
        report.ranking.resize(cols_);
        std::iota(report.ranking.begin(), report.ranking.end(), 0);
        std::stable_sort(report.ranking.begin(), report.ranking.end(),
                         [&](std::size_t a, std::size_t b) { return reliabilities[a] < reliabilities[b]; });
        const auto& order = report.ranking;

        packed_.reset(rows_, cols_ + 1);
        for (std::size_t k = 0; k < cols_; ++k)
            for (auto i : columns_[order[k]])
                packed_.set(i, k);
        for (std::size_t i = 0; i < rows_; ++i)
            if (syndrome[i] & 1u)
                packed_.set(i, cols_);
        auto pivots = detail::reduce_rows(packed_, cols_);
        const std::size_t rank = pivots.size();
        for (std::size_t i = rank; i < rows_; ++i)
            if (packed_.get(i, cols_))
                throw InconsistentSyndrome();
        report.rank = rank;

        const std::size_t words = (rank + 63) / 64;
        using Word = detail::PackedMatrix::Word;
        std::vector<Word> base(words, 0);
        for (std::size_t i = 0; i < rank; ++i)
            if (packed_.get(i, cols_))
                base[i / 64] |= Word{1} << (i % 64);
        auto popcount = [&](const std::vector<Word>& v) {
            std::size_t c = 0;
            for (auto w : v)
                c += static_cast<std::size_t>(std::popcount(w));
            return c;
        };
        report.osd0_weight = popcount(base);

        std::vector<std::size_t> nonpivot;
        nonpivot.reserve(cols_ - rank);
        {
            std::size_t p = 0;
            for (std::size_t k = 0; k < cols_; ++k) {
                if (p < rank && pivots[p] == k)
                    ++p;
                else
                    nonpivot.push_back(k);
            }
        }

        std::vector<std::size_t> flips;
        std::vector<Word> best_pivot_bits = base;
        std::size_t best = report.osd0_weight;

        if (config.osd_mode == OsdMode::combination_sweep && !nonpivot.empty()) {
            // Reduced columns of the non-pivot coordinates, over pivot rows.
            std::vector<Word> reduced(nonpivot.size() * words, 0);
            constexpr auto none = std::numeric_limits<std::size_t>::max();
            std::vector<std::size_t> slot(cols_, none);
            for (std::size_t q = 0; q < nonpivot.size(); ++q)
                slot[nonpivot[q]] = q;
            const std::size_t col_words = (cols_ + 63) / 64;
            for (std::size_t i = 0; i < rank; ++i) {
                const Word* row = packed_.row(i);
                const Word bit = Word{1} << (i % 64);
                for (std::size_t k = 0; k < col_words; ++k)
                    for (Word bits = row[k]; bits; bits &= bits - 1) {
                        const std::size_t col = k * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                        if (col >= cols_)
                            break;
                        if (slot[col] != none)
                            reduced[slot[col] * words + i / 64] |= bit;
                    }
            }
            auto column = [&](std::size_t q) { return reduced.data() + q * words; };
            std::vector<Word> trial(words);

            for (std::size_t q = 0; q < nonpivot.size(); ++q) {
                std::size_t w = 1;
                const Word* c = column(q);
                for (std::size_t k = 0; k < words; ++k)
                    w += static_cast<std::size_t>(std::popcount(base[k] ^ c[k]));
                if (w < best) {
                    best = w;
                    flips = {q};
                }
            }
            const std::size_t depth = std::min(config.lambda, nonpivot.size());
            for (std::size_t a = 0; a < depth; ++a) {
                const Word* ca = column(a);
                for (std::size_t k = 0; k < words; ++k)
                    trial[k] = base[k] ^ ca[k];
                for (std::size_t b = a + 1; b < depth; ++b) {
                    std::size_t w = 2;
                    const Word* cb = column(b);
                    for (std::size_t k = 0; k < words; ++k)
                        w += static_cast<std::size_t>(std::popcount(trial[k] ^ cb[k]));
                    if (w < best) {
                        best = w;
                        flips = {a, b};
                    }
                }
            }
            for (auto q : flips) {
                const Word* c = column(q);
                for (std::size_t k = 0; k < words; ++k)
                    best_pivot_bits[k] ^= c[k];
            }
        }

        std::vector<std::size_t> support;
        support.reserve(best);
        for (auto q : flips)
            support.push_back(order[nonpivot[q]]);
        for (std::size_t i = 0; i < rank; ++i)
            if ((best_pivot_bits[i / 64] >> (i % 64)) & 1u)
                support.push_back(order[pivots[i]]);
        report.weight = support.size();

        DecodeResult result;
        result.estimate = BinaryVector(cols_, std::move(support));
        result.syndrome_consistent = true;
        result.reliabilities.assign(reliabilities.begin(), reliabilities.end());
        result.osd = std::move(report);
        return result;
    }

    DecodeResult process(const BinaryVector& syndrome, std::span<const double> reliabilities,
                         const DecoderConfig& config)
    {
        auto dense = detail::dense_syndrome(syndrome, rows_);
        return process(std::span<const std::uint8_t>(dense), reliabilities, config);
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::vector<std::size_t>> columns_;
    detail::PackedMatrix packed_;
};

/// BP, falling back to OSD on BP's soft output when BP's hard decision
/// does not reproduce the syndrome.
class BpOsdDecoder {
public:
    explicit BpOsdDecoder(const BinaryMatrix& h) : bp_(h), osd_(h) {}

    std::size_t checks() const { return bp_.checks(); }
    std::size_t variables() const { return bp_.variables(); }

    DecodeResult decode(std::span<const std::uint8_t> syndrome, std::span<const double> priors,
                        const DecoderConfig& config)
    {
        auto result = bp_.decode(syndrome, priors, config);
        if (result.syndrome_consistent || config.osd_mode == OsdMode::off)
            return result;
        auto post = osd_.process(syndrome, result.reliabilities, config);
        post.bp_converged = false;
        post.bp_iterations = result.bp_iterations;
        return post;
    }

    DecodeResult decode(const BinaryVector& syndrome, std::span<const double> priors,
                        const DecoderConfig& config)
    {
        auto dense = detail::dense_syndrome(syndrome, checks());
        return decode(std::span<const std::uint8_t>(dense), priors, config);
    }

private:
    BpDecoder bp_;
    OsdDecoder osd_;
};

inline DecodeResult bp_decode(const BinaryMatrix& h, const BinaryVector& syndrome,
                              std::span<const double> priors, const DecoderConfig& config)
{
    return BpDecoder(h).decode(syndrome, priors, config);
}

inline DecodeResult osd_post_process(const BinaryMatrix& h, const BinaryVector& syndrome,
                                     std::span<const double> reliabilities,
                                     const DecoderConfig& config)
{
    return OsdDecoder(h).process(syndrome, reliabilities, config);
}

inline DecodeResult decode(const BinaryMatrix& h, const BinaryVector& syndrome,
                           std::span<const double> priors, const DecoderConfig& config)
{
    return BpOsdDecoder(h).decode(syndrome, priors, config);
}

} // namespace qwin
