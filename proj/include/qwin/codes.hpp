#pragma once

// CSS code model: hypergraph products, random regular base codes, logical
// operators and the logical-failure test.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "alist.hpp"
#include "fixture_data.hpp"
#include "gf2.hpp"

namespace qwin {

class CodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// First (X-check, Z-check) row pair with odd overlap, if any.
inline std::optional<std::pair<std::size_t, std::size_t>>
find_css_violation(const BinaryMatrix& hx, const BinaryMatrix& hz)
{
    if (hx.cols() != hz.cols())
        throw std::invalid_argument("CSS check: H_X has " + std::to_string(hx.cols()) +
                                    " columns but H_Z has " + std::to_string(hz.cols()));
    auto product = multiply(hx, transpose(hz));
    for (std::size_t i = 0; i < product.rows(); ++i)
        if (!product.row(i).empty())
            return std::pair{i, product.row(i).front()};
    return std::nullopt;
}

/// H_X · H_Zᵀ = 0.
inline bool validate_css(const BinaryMatrix& hx, const BinaryMatrix& hz)
{
    return !find_css_violation(hx, hz).has_value();
}

/// Rows of the result lie in ker(H_X), are independent modulo rowspace(H_Z),
/// and together with H_Z span ker(H_X).
inline BinaryMatrix logical_z_basis(const BinaryMatrix& hx, const BinaryMatrix& hz)
{
    if (!validate_css(hx, hz))
        throw CodeError("logical_z_basis: H_X and H_Z do not commute");
    EchelonBasis span(hz.cols());
    for (std::size_t i = 0; i < hz.rows(); ++i)
        span.insert(hz.row_vector(i));
    std::vector<std::vector<std::size_t>> rows;
    for (auto& v : kernel_basis(hx))
        if (span.insert(v))
            rows.push_back(v.support());
    const std::size_t count = rows.size();
    return BinaryMatrix::from_rows(count, hx.cols(), std::move(rows));
}

inline BinaryMatrix logical_x_basis(const BinaryMatrix& hx, const BinaryMatrix& hz)
{
    return logical_z_basis(hz, hx);
}

struct CssCode {
    std::string name;
    std::size_t n = 0;
    std::size_t k = 0;
    BinaryMatrix hx;         ///< X-stabilizer checks, m_X × n
    BinaryMatrix hz;         ///< Z-stabilizer checks, m_Z × n
    BinaryMatrix logical_z;  ///< k Z-logical representatives

    /// Validates commutation and fills n, k and logical_z.
    static CssCode from_checks(BinaryMatrix hx, BinaryMatrix hz, std::string name = {})
    {
        if (auto bad = find_css_violation(hx, hz)) {
            auto [x_row, z_row] = *bad;
            throw CodeError("CSS violation: X-check row " + std::to_string(x_row) +
                            " and Z-check row " + std::to_string(z_row) +
                            " overlap on an odd number of qubits");
        }
        CssCode code;
        code.name = std::move(name);
        code.n = hx.cols();
        code.k = code.n - rank(hx) - rank(hz);
        code.logical_z = logical_z_basis(hx, hz);
        code.hx = std::move(hx);
        code.hz = std::move(hz);
        return code;
    }

    friend bool operator==(const CssCode& a, const CssCode& b)
    {
        return a.hx == b.hx && a.hz == b.hz;
    }
};

/// True iff the syndrome-free X-type vector `v` flips some Z logical,
/// i.e. v ∉ rowspace(H_X). Throws if H_Z·v ≠ 0.
inline bool is_logical_failure(const CssCode& code, const BinaryVector& v)
{
    if (v.size() != code.n)
        throw std::invalid_argument("is_logical_failure: vector length differs from n");
    if (!mat_vec(code.hz, v).is_zero())
        throw std::invalid_argument("is_logical_failure: vector has a nonzero Z-syndrome");
    for (std::size_t i = 0; i < code.logical_z.rows(); ++i)
        if (code.logical_z.row_vector(i).dot(v))
            return true;
    return false;
}

/// Dense variant for the simulation loop; the caller guarantees H_Z·v = 0.
inline bool flips_logical(const CssCode& code, std::span<const std::uint8_t> v)
{
    for (std::size_t i = 0; i < code.logical_z.rows(); ++i) {
        std::uint8_t acc = 0;
        for (auto j : code.logical_z.row(i))
            acc ^= v[j];
        if (acc & 1u)
            return true;
    }
    return false;
}

/// H_X = [A⊗I_{n_A} | I_{m_A}⊗Aᵀ],  H_Z = [I_{n_A}⊗A | Aᵀ⊗I_{m_A}].
inline CssCode hgp(const BinaryMatrix& a, std::string name = {})
{
    if (a.nnz() == 0)
        throw std::invalid_argument("hgp: base matrix is zero");
    auto at = transpose(a);
    auto i_n = BinaryMatrix::identity(a.cols());
    auto i_m = BinaryMatrix::identity(a.rows());
    auto hx = hstack(kron(a, i_n), kron(i_m, at));
    auto hz = hstack(kron(i_n, a), kron(at, i_m));
    return CssCode::from_checks(std::move(hx), std::move(hz), std::move(name));
}

struct BaseCode {
    BinaryMatrix a;
    std::size_t column_weight = 0;
    std::size_t row_weight = 0;

    bool is_regular() const
    {
        auto cw = a.column_weights();
        auto rw = a.row_weights();
        return std::all_of(cw.begin(), cw.end(), [&](auto w) { return w == column_weight; }) &&
               std::all_of(rw.begin(), rw.end(), [&](auto w) { return w == row_weight; });
    }
};

/// Length of the shortest cycle in the Tanner graph of `a`; nullopt if acyclic.
inline std::optional<std::size_t> tanner_girth(const BinaryMatrix& a)
{
    const std::size_t vars = a.cols();
    const std::size_t nodes = vars + a.rows();
    std::vector<std::vector<std::size_t>> adj(nodes);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (auto j : a.row(i)) {
            adj[j].push_back(vars + i);
            adj[vars + i].push_back(j);
        }
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(nodes), parent(nodes);
    constexpr auto unseen = std::numeric_limits<std::size_t>::max();
    for (std::size_t root = 0; root < nodes; ++root) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[root] = 0;
        parent[root] = unseen;
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            if (2 * dist[u] >= best)
                break;
            for (auto w : adj[u]) {
                if (dist[w] == unseen) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push(w);
                } else if (w != parent[u]) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<std::size_t>::max())
        return std::nullopt;
    return best;
}

struct RegularLdpcOptions {
    std::size_t min_girth = 0;  ///< 0 disables the girth filter
    std::size_t max_retries = 10000;
};

namespace detail {

/// Column-by-column construction that rejects each column placement
/// closing a cycle shorter than `min_girth`. Empty on a dead end.
inline std::optional<std::vector<std::vector<std::size_t>>>
girth_constrained_rows(std::size_t m, std::size_t n, std::size_t r, std::size_t s,
                       std::size_t min_girth, std::mt19937_64& rng)
{
    constexpr std::size_t column_tries = 200;
    constexpr auto unseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::vector<std::size_t>> rows(m), cols(n);
    std::vector<std::size_t> dist(m);
    // Check-to-check distances in the current graph, counted in Tanner edges.
    auto distances_from = [&](std::size_t src) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[src] = 0;
        std::queue<std::size_t> q;
        q.push(src);
        while (!q.empty()) {
            auto c = q.front();
            q.pop();
            for (auto v : rows[c])
                for (auto c2 : cols[v])
                    if (dist[c2] == unseen) {
                        dist[c2] = dist[c] + 2;
                        q.push(c2);
                    }
        }
    };
    std::vector<std::size_t> open, chosen;
    for (std::size_t j = 0; j < n; ++j) {
        open.clear();
        for (std::size_t i = 0; i < m; ++i)
            if (rows[i].size() < s)
                open.push_back(i);
        if (open.size() < r)
            return std::nullopt;
        bool placed = false;
        for (std::size_t t = 0; t < column_tries && !placed; ++t) {
            std::shuffle(open.begin(), open.end(), rng);
            chosen.assign(open.begin(), open.begin() + r);
            placed = true;
            for (std::size_t a = 0; a < r && placed; ++a) {
                distances_from(chosen[a]);
                for (std::size_t b = a + 1; b < r && placed; ++b)
                    placed = dist[chosen[b]] == unseen || dist[chosen[b]] + 2 >= min_girth;
            }
        }
        if (!placed)
            return std::nullopt;
        for (auto i : chosen) {
            rows[i].push_back(j);
            cols[j].push_back(i);
        }
    }
    return rows;
}

} // namespace detail

/// Random (r,s)-regular m×n matrix. Uses Gallager's ensemble (r stacked
/// blocks, each a random column permutation of s-wide row bands) when s
/// divides n, otherwise random socket matching; both retry on repeated
/// edges. With options.min_girth set, columns are instead placed one at a
/// time, rejecting placements that close a shorter cycle.
inline BaseCode generate_regular_ldpc(std::size_t m, std::size_t n, std::size_t r, std::size_t s,
                                      std::uint64_t seed, RegularLdpcOptions options = {})
{
    if (m == 0 || n == 0 || r == 0 || s == 0)
        throw std::invalid_argument("generate_regular_ldpc: dimensions and weights must be positive");
    if (n * r != m * s)
        throw std::invalid_argument("generate_regular_ldpc: n*r must equal m*s");
    if (r > m || s > n)
        throw std::invalid_argument("generate_regular_ldpc: weight exceeds dimension");

    std::mt19937_64 rng(seed);
    const bool gallager = n % s == 0;
    for (std::size_t attempt = 0; attempt < options.max_retries; ++attempt) {
        std::vector<std::vector<std::size_t>> rows(m);
        bool ok = true;
        if (options.min_girth > 0) {
            auto built = detail::girth_constrained_rows(m, n, r, s, options.min_girth, rng);
            if (!built)
                continue;
            rows = std::move(*built);
        } else if (gallager) {
            const std::size_t band = n / s;
            std::vector<std::size_t> perm(n);
            for (std::size_t block = 0; block < r; ++block) {
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                for (std::size_t b = 0; b < band; ++b)
                    rows[block * band + b].assign(perm.begin() + b * s, perm.begin() + (b + 1) * s);
            }
        } else {
            std::vector<std::size_t> sockets;
            sockets.reserve(n * r);
            for (std::size_t j = 0; j < n; ++j)
                sockets.insert(sockets.end(), r, j);
            std::shuffle(sockets.begin(), sockets.end(), rng);
            for (std::size_t i = 0; i < m && ok; ++i) {
                rows[i].assign(sockets.begin() + i * s, sockets.begin() + (i + 1) * s);
                std::sort(rows[i].begin(), rows[i].end());
                ok = std::adjacent_find(rows[i].begin(), rows[i].end()) == rows[i].end();
            }
        }
        if (!ok)
            continue;
        auto a = BinaryMatrix::from_rows(m, n, std::move(rows));
        if (options.min_girth > 0) {
            auto g = tanner_girth(a);
            if (g && *g < options.min_girth)
                continue;
        }
        return BaseCode{std::move(a), r, s};
    }
    throw CodeError("generate_regular_ldpc: no valid matrix after " +
                    std::to_string(options.max_retries) + " attempts");
}

namespace detail {

/// Lightest vector found in ker(checks) that pairs nontrivially with
/// `logicals`, over information sets drawn from random column orders.
inline std::optional<std::size_t> lightest_logical(const BinaryMatrix& checks,
                                                   const BinaryMatrix& logicals,
                                                   std::size_t trials, std::mt19937_64& rng)
{
    if (logicals.rows() == 0)
        return std::nullopt;
    const std::size_t n = checks.cols();
    std::optional<std::size_t> best;
    std::vector<std::size_t> order(n);
    std::vector<std::uint8_t> v(n);
    for (std::size_t t = 0; t < trials; ++t) {
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        auto packed = pack(checks, order);
        auto pivots = reduce_rows(packed, n);
        std::vector<bool> is_pivot(n, false);
        for (auto c : pivots)
            is_pivot[c] = true;
        for (std::size_t f = 0; f < n; ++f) {
            if (is_pivot[f])
                continue;
            std::size_t weight = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i)
                weight += packed.get(i, f);
            if (best && weight >= *best)
                continue;
            std::fill(v.begin(), v.end(), 0);
            v[order[f]] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i)
                if (packed.get(i, f))
                    v[order[pivots[i]]] = 1;
            bool logical = false;
            for (std::size_t i = 0; i < logicals.rows() && !logical; ++i) {
                std::uint8_t acc = 0;
                for (auto j : logicals.row(i))
                    acc ^= v[j];
                logical = acc & 1u;
            }
            if (logical)
                best = weight;
        }
    }
    return best;
}

} // namespace detail

/// Minimum weight of nontrivial X- or Z-logicals found by random
/// information-set search. An upper bound on the distance; nullopt for k = 0.
inline std::optional<std::size_t> distance_upper_bound(const CssCode& code, std::size_t trials,
                                                       std::uint64_t seed)
{
    if (trials == 0)
        throw std::invalid_argument("distance_upper_bound: trials must be at least 1");
    std::mt19937_64 rng(seed);
    auto x_side = detail::lightest_logical(code.hz, code.logical_z, trials, rng);
    auto z_side = detail::lightest_logical(code.hx, logical_x_basis(code.hx, code.hz), trials, rng);
    if (!x_side)
        return z_side;
    if (!z_side)
        return x_side;
    return std::min(*x_side, *z_side);
}

inline std::optional<fixtures::BaseMatrixFixture> find_fixture(std::string_view name)
{
    for (const auto& f : fixtures::kBaseMatrices)
        if (f.name == name)
            return f;
    return std::nullopt;
}

inline BinaryMatrix fixture_base_matrix(std::string_view name)
{
    auto f = find_fixture(name);
    if (!f)
        throw CodeError("unknown fixture '" + std::string(name) + "'");
    return BinaryMatrix::from_strings(f->rows);
}

inline CssCode load_fixture(std::string_view name)
{
    return hgp(fixture_base_matrix(name), std::string(name));
}

inline CssCode load_code(const std::string& hx_path, const std::string& hz_path)
{
    auto hx = load_alist(hx_path);
    auto hz = load_alist(hz_path);
    if (hx.cols() != hz.cols())
        throw CodeError("load_code: " + hx_path + " has " + std::to_string(hx.cols()) +
                        " columns but " + hz_path + " has " + std::to_string(hz.cols()));
    return CssCode::from_checks(std::move(hx), std::move(hz), hx_path + "," + hz_path);
}

/// Accepts a fixture name or "hx.alist,hz.alist".
inline CssCode load_code(const std::string& source)
{
    auto comma = source.find(',');
    if (comma == std::string::npos)
        return load_fixture(source);
    return load_code(source.substr(0, comma), source.substr(comma + 1));
}

inline void store_code(const CssCode& code, const std::string& hx_path, const std::string& hz_path)
{
    store_alist(hx_path, code.hx);
    store_alist(hz_path, code.hz);
}

} // namespace qwin
