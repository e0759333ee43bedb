#pragma once

// Test-only reference computations. Everything here works on plain dense
// 0/1 arrays and shares no code with the library's sparse or packed paths.

#include <cstdint>
#include <random>
#include <vector>

#include <qwin/gf2.hpp>

namespace oracle {

using Dense = std::vector<std::vector<int>>;
using Bits = std::vector<int>;

inline Dense random_dense(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double density = 0.5)
{
    std::bernoulli_distribution coin(density);
    Dense d(rows, Bits(cols));
    for (auto& r : d)
        for (auto& x : r)
            x = coin(rng) ? 1 : 0;
    return d;
}

inline Bits random_bits(std::size_t n, std::mt19937_64& rng, double density = 0.5)
{
    std::bernoulli_distribution coin(density);
    Bits b(n);
    for (auto& x : b)
        x = coin(rng) ? 1 : 0;
    return b;
}

inline qwin::BinaryMatrix to_matrix(const Dense& d, std::size_t cols)
{
    std::vector<std::vector<std::size_t>> rows(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (d[i][j])
                rows[i].push_back(j);
    return qwin::BinaryMatrix::from_rows(d.size(), cols, rows);
}

inline qwin::BinaryVector to_vector(const Bits& b)
{
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i])
            s.push_back(i);
    return qwin::BinaryVector(b.size(), s);
}

inline Dense to_dense(const qwin::BinaryMatrix& m)
{
    Dense d(m.rows(), Bits(m.cols(), 0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            d[i][j] = m.test(i, j) ? 1 : 0;
    return d;
}

inline Bits to_bits(const qwin::BinaryVector& v)
{
    Bits b(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        b[i] = v.test(i) ? 1 : 0;
    return b;
}

/// Entry-by-entry mod-2 dot products.
inline Bits mat_vec(const Dense& m, const Bits& v)
{
    Bits out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        int acc = 0;
        for (std::size_t j = 0; j < v.size(); ++j)
            acc += m[i][j] * v[j];
        out[i] = acc % 2;
    }
    return out;
}

inline Dense mat_mul(const Dense& a, const Dense& b, std::size_t b_cols)
{
    Dense out(a.size(), Bits(b_cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b_cols; ++j) {
            int acc = 0;
            for (std::size_t k = 0; k < b.size(); ++k)
                acc += a[i][k] * b[k][j];
            out[i][j] = acc % 2;
        }
    return out;
}

/// Plain row-echelon elimination on a copy.
inline std::size_t rank(Dense m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && !m[p][c])
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i)
            if (m[i][c])
                for (std::size_t j = 0; j < cols; ++j)
                    m[i][j] ^= m[r][j];
        ++r;
    }
    return r;
}

inline Bits add(Bits a, const Bits& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] ^= b[i];
    return a;
}

inline std::size_t weight(const Bits& b)
{
    std::size_t w = 0;
    for (auto x : b)
        w += x;
    return w;
}

/// All 2^n vectors of length n (n small).
inline std::vector<Bits> all_vectors(std::size_t n)
{
    std::vector<Bits> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Bits b(n);
        for (std::size_t i = 0; i < n; ++i)
            b[i] = (mask >> i) & 1u;
        out.push_back(b);
    }
    return out;
}

/// Whether v is in the row space of m, by exhaustive subset enumeration.
inline bool in_rowspace(const Dense& m, const Bits& v)
{
    const std::size_t rows = m.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows); ++mask) {
        Bits acc(v.size(), 0);
        for (std::size_t i = 0; i < rows; ++i)
            if ((mask >> i) & 1u)
                acc = add(acc, m[i]);
        if (acc == v)
            return true;
    }
    return false;
}

} // namespace oracle
