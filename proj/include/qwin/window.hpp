#pragma once

// Sliding-window (W,F) decoding.
//
// Each cycle decodes W rounds of syndromes against
//     H_win = [I_W ⊗ H | B ⊗ I_m],   B_ij = 1 iff i = j or i = j + 1,
// whose variables are (e_1..e_W, u_1..u_W) and whose syndrome is the
// differenced sequence (σ_1, σ_2 + σ_1, ..., σ_W + σ_{W-1}). The correction
// of the first F rounds, ξ = Σ_{j≤F} ẽ_j, is committed to a software Pauli
// frame and the W−F retained syndromes are updated by H·ξ.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bposd.hpp"
#include "gf2.hpp"

namespace qwin {

struct WindowConfig {
    std::size_t width = 1;   ///< W, rounds per decode
    std::size_t offset = 1;  ///< F, rounds committed per cycle

    void validate() const
    {
        if (offset < 1 || offset > width)
            throw std::invalid_argument("WindowConfig: need 1 <= F <= W, got W=" +
                                        std::to_string(width) + " F=" + std::to_string(offset));
    }

    friend bool operator==(const WindowConfig&, const WindowConfig&) = default;
};

struct WindowMatrix {
    BinaryMatrix h_win;
    std::size_t width = 0;
    std::size_t n = 0;  ///< qubits per round
    std::size_t m = 0;  ///< checks per round

    std::size_t variables() const { return width * (n + m); }
    /// Column of data-qubit variable q in round t (0-based).
    std::size_t data_column(std::size_t t, std::size_t q) const { return t * n + q; }
    /// Column of measurement variable c in round t (0-based).
    std::size_t measurement_column(std::size_t t, std::size_t c) const
    {
        return width * n + t * m + c;
    }
};

inline WindowMatrix build_window_matrix(const BinaryMatrix& h, std::size_t width)
{
    if (width < 1)
        throw std::invalid_argument("build_window_matrix: width must be at least 1");
    std::vector<std::vector<std::size_t>> b(width);
    for (std::size_t i = 0; i < width; ++i) {
        if (i > 0)
            b[i].push_back(i - 1);
        b[i].push_back(i);
    }
    auto bidiagonal = BinaryMatrix::from_rows(width, width, std::move(b));
    auto h_win = hstack(kron(BinaryMatrix::identity(width), h),
                        kron(bidiagonal, BinaryMatrix::identity(h.rows())));
    return {std::move(h_win), width, h.cols(), h.rows()};
}

/// (σ_1, σ_2 + σ_1, ..., σ_W + σ_{W-1}).
inline std::vector<BinaryVector> diff_syndromes(std::span<const BinaryVector> sigmas)
{
    std::vector<BinaryVector> out;
    out.reserve(sigmas.size());
    for (std::size_t t = 0; t < sigmas.size(); ++t) {
        if (sigmas[t].size() != sigmas.front().size())
            throw std::invalid_argument("diff_syndromes: syndromes differ in length");
        out.push_back(t == 0 ? sigmas[0] : sigmas[t] ^ sigmas[t - 1]);
    }
    return out;
}

struct WindowState {
    std::vector<BinaryVector> buffered;    ///< updated σ′ of the W−F uncommitted rounds
    BinaryVector cumulative_correction;    ///< Σ ξ over committed cycles
    std::size_t rounds_elapsed = 0;        ///< committed rounds, N·F after N cycles
    std::size_t cycles = 0;
};

struct CycleResult {
    BinaryVector commit;                      ///< ξ
    std::vector<BinaryVector> window;         ///< frame-corrected σ fed to the window
    std::vector<BinaryVector> differenced;    ///< decoder input, one block per round
    DecodeResult decode;                      ///< over the W(n+m) window variables
};

/// Owns H_win and a BP-OSD decoder over it. Cycles mutate a caller-owned
/// WindowState; one decoder instance is used by one thread at a time.
class WindowDecoder {
public:
    WindowDecoder(const BinaryMatrix& h, WindowConfig config, double p, DecoderConfig decoder)
        : WindowDecoder(h, std::make_shared<const WindowMatrix>(build_window_matrix(h, config.width)),
                        config, p, decoder)
    {}

    /// Reuses a prebuilt H_win (shared between decoders of the same code and W).
    WindowDecoder(const BinaryMatrix& h, std::shared_ptr<const WindowMatrix> matrix,
                  WindowConfig config, double p, DecoderConfig decoder)
        : h_(h), matrix_(std::move(matrix)), config_(config), decoder_config_(decoder),
          bposd_(matrix_->h_win)
    {
        config_.validate();
        decoder_config_.validate();
        if (matrix_->width != config_.width || matrix_->n != h.cols() || matrix_->m != h.rows())
            throw std::invalid_argument("WindowDecoder: window matrix does not match H and W");
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("WindowDecoder: p must lie in (0, 1]");
        // Priors must stay strictly inside (0, 1).
        const double prior = std::clamp(p, 1e-12, 1.0 - 1e-12);
        priors_.assign(matrix_->variables(), prior);
    }

    const WindowConfig& config() const { return config_; }
    const WindowMatrix& matrix() const { return *matrix_; }
    const BinaryMatrix& check_matrix() const { return h_; }
    std::shared_ptr<const WindowMatrix> shared_matrix() const { return matrix_; }

    WindowState initial_state() const
    {
        WindowState s;
        s.cumulative_correction = BinaryVector(h_.cols());
        return s;
    }

    /// Number of syndromes the next cycle expects: W first, F afterwards.
    std::size_t syndromes_needed(const WindowState& state) const
    {
        return state.cycles == 0 ? config_.width : config_.offset;
    }

    /// Runs one EC cycle on freshly measured syndromes (of the physical,
    /// uncorrected state). Returns ξ and advances `state`.
    CycleResult cycle(WindowState& state, std::span<const BinaryVector> measured)
    {
        const std::size_t n = h_.cols();
        const std::size_t m = h_.rows();
        const std::size_t W = config_.width;
        const std::size_t F = config_.offset;
        if (measured.size() != syndromes_needed(state))
            throw std::invalid_argument("WindowDecoder::cycle: expected " +
                                        std::to_string(syndromes_needed(state)) +
                                        " syndromes, got " + std::to_string(measured.size()));
        if (state.cumulative_correction.size() != n)
            throw std::invalid_argument("WindowDecoder::cycle: state does not belong to this code");

        for (const auto& s : measured)
            if (s.size() != m)
                throw std::invalid_argument("WindowDecoder::cycle: syndrome length differs from check count");

        CycleResult out;
        out.window.reserve(W);
        for (auto& s : state.buffered)
            out.window.push_back(std::move(s));
        auto frame = mat_vec(h_, state.cumulative_correction);
        for (const auto& s : measured)
            out.window.push_back(s ^ frame);
        out.differenced = diff_syndromes(out.window);

        syndrome_.assign(W * m, 0);
        for (std::size_t t = 0; t < W; ++t)
            for (auto i : out.differenced[t].support())
                syndrome_[t * m + i] = 1;
        out.decode = bposd_.decode(std::span<const std::uint8_t>(syndrome_), priors_, decoder_config_);

        std::vector<std::uint8_t> xi(n, 0);
        for (auto col : out.decode.estimate.support()) {
            if (col >= F * n)
                break;
            xi[col % n] ^= 1u;
        }
        out.commit = BinaryVector::from_dense(xi);

        auto shift = mat_vec(h_, out.commit);
        state.buffered.clear();
        for (std::size_t t = F; t < W; ++t)
            state.buffered.push_back(out.window[t] ^ shift);
        state.cumulative_correction ^= out.commit;
        state.rounds_elapsed += F;
        ++state.cycles;
        return out;
    }

private:
    BinaryMatrix h_;
    std::shared_ptr<const WindowMatrix> matrix_;
    WindowConfig config_;
    DecoderConfig decoder_config_;
    BpOsdDecoder bposd_;
    std::vector<double> priors_;
    std::vector<std::uint8_t> syndrome_;
};

/// r = Σ_{i ≤ rounds_elapsed} e_i + Σ ξ.
inline BinaryVector residual_error(const WindowState& state, std::span<const BinaryVector> history)
{
    if (history.size() != state.rounds_elapsed)
        throw std::invalid_argument("residual_error: history covers " + std::to_string(history.size()) +
                                    " rounds, state committed " + std::to_string(state.rounds_elapsed));
    auto r = state.cumulative_correction;
    for (const auto& e : history)
        r ^= e;
    return r;
}

/// Decodes one noisy syndrome against [H | I_m], built directly rather
/// than through the window machinery. Returns the data-qubit part.
class SingleShotDecoder {
public:
    SingleShotDecoder(const BinaryMatrix& h, double p, DecoderConfig decoder)
        : n_(h.cols()), config_(decoder), bposd_(hstack(h, BinaryMatrix::identity(h.rows()))),
          priors_(h.cols() + h.rows(), std::clamp(p, 1e-12, 1.0 - 1e-12))
    {}

    BinaryVector decode(const BinaryVector& syndrome)
    {
        auto result = bposd_.decode(syndrome, priors_, config_);
        return result.estimate.slice(0, n_);
    }

private:
    std::size_t n_;
    DecoderConfig config_;
    BpOsdDecoder bposd_;
    std::vector<double> priors_;
};

} // namespace qwin
