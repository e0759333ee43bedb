#pragma once

// Sparse and bit-packed linear algebra over GF(2).
//
// BinaryMatrix (CSR, sorted rows) and BinaryVector (sorted support) are the
// interchange types. Elimination runs on detail::PackedMatrix, a dense
// row-major bit matrix in 64-bit words.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qwin {

class BinaryVector {
public:
    BinaryVector() = default;
    explicit BinaryVector(std::size_t length) : length_(length) {}

    /// Takes any ordering of distinct indices; throws on duplicates or
    /// out-of-range indices.
    BinaryVector(std::size_t length, std::vector<std::size_t> support)
        : length_(length), support_(std::move(support))
    {
        std::sort(support_.begin(), support_.end());
        if (std::adjacent_find(support_.begin(), support_.end()) != support_.end())
            throw std::invalid_argument("BinaryVector: duplicate index in support");
        if (!support_.empty() && support_.back() >= length_)
            throw std::invalid_argument("BinaryVector: index out of range");
    }

    static BinaryVector from_dense(std::span<const std::uint8_t> bits)
    {
        BinaryVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i] & 1u)
                v.support_.push_back(i);
        return v;
    }

    /// Parses a string of '0'/'1' characters.
    static BinaryVector from_string(std::string_view bits)
    {
        BinaryVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                v.support_.push_back(i);
            else if (bits[i] != '0')
                throw std::invalid_argument("BinaryVector: expected '0' or '1'");
        }
        return v;
    }

    std::size_t size() const { return length_; }
    std::size_t weight() const { return support_.size(); }
    bool is_zero() const { return support_.empty(); }
    const std::vector<std::size_t>& support() const { return support_; }

    bool test(std::size_t i) const
    {
        return std::binary_search(support_.begin(), support_.end(), i);
    }

    std::vector<std::uint8_t> to_dense() const
    {
        std::vector<std::uint8_t> bits(length_, 0);
        for (auto i : support_)
            bits[i] = 1;
        return bits;
    }

    std::string to_string() const
    {
        std::string s(length_, '0');
        for (auto i : support_)
            s[i] = '1';
        return s;
    }

    BinaryVector& operator^=(const BinaryVector& other)
    {
        if (other.length_ != length_)
            throw std::invalid_argument("BinaryVector: length mismatch in addition");
        std::vector<std::size_t> out;
        out.reserve(support_.size() + other.support_.size());
        std::set_symmetric_difference(support_.begin(), support_.end(),
                                      other.support_.begin(), other.support_.end(),
                                      std::back_inserter(out));
        support_ = std::move(out);
        return *this;
    }

    friend BinaryVector operator^(BinaryVector a, const BinaryVector& b) { return a ^= b; }
    friend bool operator==(const BinaryVector&, const BinaryVector&) = default;

    /// Parity of the overlap with another vector of the same length.
    bool dot(const BinaryVector& other) const
    {
        if (other.length_ != length_)
            throw std::invalid_argument("BinaryVector: length mismatch in dot product");
        std::size_t overlap = 0;
        auto a = support_.begin();
        auto b = other.support_.begin();
        while (a != support_.end() && b != other.support_.end()) {
            if (*a < *b)
                ++a;
            else if (*b < *a)
                ++b;
            else {
                ++overlap;
                ++a;
                ++b;
            }
        }
        return overlap & 1u;
    }

    /// Concatenation (this ‖ tail).
    BinaryVector concat(const BinaryVector& tail) const
    {
        BinaryVector v(length_ + tail.length_);
        v.support_ = support_;
        for (auto i : tail.support_)
            v.support_.push_back(i + length_);
        return v;
    }

    /// Entries [offset, offset + length) as a new vector.
    BinaryVector slice(std::size_t offset, std::size_t length) const
    {
        if (offset + length > length_)
            throw std::invalid_argument("BinaryVector: slice out of range");
        BinaryVector v(length);
        auto lo = std::lower_bound(support_.begin(), support_.end(), offset);
        for (auto it = lo; it != support_.end() && *it < offset + length; ++it)
            v.support_.push_back(*it - offset);
        return v;
    }

private:
    std::size_t length_ = 0;
    std::vector<std::size_t> support_;
};

/// Sparse matrix over GF(2), stored as sorted CSR. Equal iff same shape and
/// same entry set.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), offsets_(rows + 1, 0)
    {}

    /// Builds from per-row column lists in any order. Duplicate entries and
    /// out-of-range columns are rejected.
    static BinaryMatrix from_rows(std::size_t rows, std::size_t cols,
                                  std::vector<std::vector<std::size_t>> row_support)
    {
        if (row_support.size() != rows)
            throw std::invalid_argument("BinaryMatrix: row count mismatch");
        BinaryMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            auto& r = row_support[i];
            std::sort(r.begin(), r.end());
            if (std::adjacent_find(r.begin(), r.end()) != r.end())
                throw std::invalid_argument("BinaryMatrix: duplicate entry in row " +
                                            std::to_string(i));
            if (!r.empty() && r.back() >= cols)
                throw std::invalid_argument("BinaryMatrix: column index out of range in row " +
                                            std::to_string(i));
            m.indices_.insert(m.indices_.end(), r.begin(), r.end());
            m.offsets_[i + 1] = m.indices_.size();
        }
        return m;
    }

    /// Builds from rows of '0'/'1' characters (whitespace ignored).
    static BinaryMatrix from_strings(std::span<const std::string_view> rows)
    {
        std::vector<std::vector<std::size_t>> support(rows.size());
        std::size_t cols = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::size_t c = 0;
            for (char ch : rows[i]) {
                if (ch == '1')
                    support[i].push_back(c++);
                else if (ch == '0')
                    ++c;
                else if (ch != ' ' && ch != '\t')
                    throw std::invalid_argument("BinaryMatrix: unexpected character in row string");
            }
            if (i == 0)
                cols = c;
            else if (c != cols)
                throw std::invalid_argument("BinaryMatrix: ragged row strings");
        }
        return from_rows(rows.size(), cols, std::move(support));
    }

    static BinaryMatrix from_strings(std::initializer_list<std::string_view> rows)
    {
        return from_strings(std::span<const std::string_view>(rows.begin(), rows.size()));
    }

    static BinaryMatrix from_dense(const std::vector<std::vector<std::uint8_t>>& dense,
                                   std::size_t cols)
    {
        std::vector<std::vector<std::size_t>> support(dense.size());
        for (std::size_t i = 0; i < dense.size(); ++i) {
            if (dense[i].size() != cols)
                throw std::invalid_argument("BinaryMatrix: ragged dense rows");
            for (std::size_t j = 0; j < cols; ++j)
                if (dense[i][j] & 1u)
                    support[i].push_back(j);
        }
        return from_rows(dense.size(), cols, std::move(support));
    }

    static BinaryMatrix identity(std::size_t n)
    {
        BinaryMatrix m(n, n);
        m.indices_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            m.indices_[i] = i;
            m.offsets_[i + 1] = i + 1;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return indices_.size(); }

    std::span<const std::size_t> row(std::size_t i) const
    {
        return {indices_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    BinaryVector row_vector(std::size_t i) const
    {
        auto r = row(i);
        return BinaryVector(cols_, std::vector<std::size_t>(r.begin(), r.end()));
    }

    bool test(std::size_t i, std::size_t j) const
    {
        auto r = row(i);
        return std::binary_search(r.begin(), r.end(), j);
    }

    /// Per-column lists of row indices (ascending).
    std::vector<std::vector<std::size_t>> column_supports() const
    {
        std::vector<std::vector<std::size_t>> cols(cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (auto j : row(i))
                cols[j].push_back(i);
        return cols;
    }

    std::vector<std::size_t> row_weights() const
    {
        std::vector<std::size_t> w(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            w[i] = offsets_[i + 1] - offsets_[i];
        return w;
    }

    std::vector<std::size_t> column_weights() const
    {
        std::vector<std::size_t> w(cols_, 0);
        for (auto j : indices_)
            ++w[j];
        return w;
    }

    std::vector<std::vector<std::uint8_t>> to_dense() const
    {
        std::vector<std::vector<std::uint8_t>> d(rows_, std::vector<std::uint8_t>(cols_, 0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (auto j : row(i))
                d[i][j] = 1;
        return d;
    }

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::size_t> indices_;
};

namespace detail {

/// Dense row-major bit matrix, 64 columns per word.
class PackedMatrix {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kBits = 64;

    PackedMatrix() = default;
    PackedMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + kBits - 1) / kBits),
          words_(rows * stride_, 0)
    {}

    /// Resizes and zeroes, reusing storage.
    void reset(std::size_t rows, std::size_t cols)
    {
        rows_ = rows;
        cols_ = cols;
        stride_ = (cols + kBits - 1) / kBits;
        words_.assign(rows * stride_, 0);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    Word* row(std::size_t i) { return words_.data() + i * stride_; }
    const Word* row(std::size_t i) const { return words_.data() + i * stride_; }

    bool get(std::size_t i, std::size_t j) const
    {
        return (row(i)[j / kBits] >> (j % kBits)) & 1u;
    }
    void set(std::size_t i, std::size_t j) { row(i)[j / kBits] |= Word{1} << (j % kBits); }
    void flip(std::size_t i, std::size_t j) { row(i)[j / kBits] ^= Word{1} << (j % kBits); }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a != b)
            std::swap_ranges(row(a), row(a) + stride_, row(b));
    }

    /// row(dst) ^= row(src), starting at word `from_word`.
    void xor_row(std::size_t dst, std::size_t src, std::size_t from_word = 0)
    {
        Word* d = row(dst);
        const Word* s = row(src);
        for (std::size_t w = from_word; w < stride_; ++w)
            d[w] ^= s[w];
    }

    /// Reorders rows so that new row r is old row order[r].
    void permute_rows(std::span<const std::size_t> order)
    {
        std::vector<Word> out(words_.size());
        for (std::size_t r = 0; r < order.size(); ++r)
            std::copy_n(row(order[r]), stride_, out.data() + r * stride_);
        words_.swap(out);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> words_;
};

/// Gauss-Jordan elimination over the first `pivot_cols` columns, visited
/// left to right. Trailing columns are carried along (augmented part).
/// The pivot for a column is the lowest-positioned row at or below the
/// current rank. Returns pivot columns; pivot i lives in row i.
///
/// Instead of testing every row for every column, each 64-column word keeps
/// the list of rows that have touched it, split into per-bit buckets when
/// the word is reached. Work then tracks fill-in on sparse inputs.
inline std::vector<std::size_t> reduce_rows(PackedMatrix& m, std::size_t pivot_cols)
{
    using Word = PackedMatrix::Word;
    constexpr std::size_t kBits = PackedMatrix::kBits;
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    const std::size_t rows = m.rows();
    const std::size_t stride = m.stride();
    const std::size_t pivot_words = (pivot_cols + kBits - 1) / kBits;

    std::vector<std::vector<std::size_t>> word_rows(pivot_words);
    for (std::size_t i = 0; i < rows; ++i) {
        const Word* r = m.row(i);
        for (std::size_t k = 0; k < pivot_words; ++k)
            if (r[k])
                word_rows[k].push_back(i);
    }

    // Rows stay in place; position[] and at[] track the logical order.
    std::vector<std::size_t> position(rows), at(rows), stamp(rows, none), seen(rows, none);
    for (std::size_t i = 0; i < rows; ++i)
        position[i] = at[i] = i;

    std::vector<std::size_t> pivots;
    std::vector<std::vector<std::size_t>> bucket(kBits);
    std::size_t rank = 0;
    for (std::size_t w = 0; w < pivot_words && rank < rows; ++w) {
        for (auto& b : bucket)
            b.clear();
        for (auto i : word_rows[w]) {
            if (seen[i] == w)
                continue;
            seen[i] = w;
            for (Word bits = m.row(i)[w]; bits; bits &= bits - 1)
                bucket[static_cast<std::size_t>(std::countr_zero(bits))].push_back(i);
        }
        std::vector<std::size_t>().swap(word_rows[w]);

        for (std::size_t b = 0; b < kBits && rank < rows; ++b) {
            const std::size_t c = w * kBits + b;
            if (c >= pivot_cols)
                break;
            const Word mask = Word{1} << b;
            std::size_t pivot = none;
            for (auto i : bucket[b])
                if (position[i] >= rank && (pivot == none || position[i] < position[pivot]) &&
                    (m.row(i)[w] & mask))
                    pivot = i;
            if (pivot == none)
                continue;
            const std::size_t displaced = at[rank];
            std::swap(at[rank], at[position[pivot]]);
            position[displaced] = position[pivot];
            position[pivot] = rank;

            const Word* src = m.row(pivot);
            const Word later = b + 1 < kBits ? src[w] & (~Word{0} << (b + 1)) : 0;
            for (std::size_t n = 0; n < bucket[b].size(); ++n) {
                const std::size_t i = bucket[b][n];
                Word* dst = m.row(i);
                if (i == pivot || stamp[i] == c || !(dst[w] & mask))
                    continue;
                stamp[i] = c;
                for (Word fresh = later & ~dst[w]; fresh; fresh &= fresh - 1)
                    bucket[static_cast<std::size_t>(std::countr_zero(fresh))].push_back(i);
                dst[w] ^= src[w];
                for (std::size_t k = w + 1; k < stride; ++k) {
                    if (!src[k])
                        continue;
                    if (k < pivot_words && !dst[k])
                        word_rows[k].push_back(i);
                    dst[k] ^= src[k];
                }
            }
            pivots.push_back(c);
            ++rank;
        }
    }
    m.permute_rows(at);
    return pivots;
}

/// Packs `m` with its columns visited in `order` (packed column k holds
/// column order[k]), leaving `extra_cols` zero columns on the right.
inline PackedMatrix pack(const BinaryMatrix& m, std::span<const std::size_t> order,
                         std::size_t extra_cols = 0)
{
    std::vector<std::size_t> position(m.cols());
    for (std::size_t k = 0; k < order.size(); ++k)
        position[order[k]] = k;
    PackedMatrix p(m.rows(), m.cols() + extra_cols);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (auto j : m.row(i))
            p.set(i, position[j]);
    return p;
}

inline PackedMatrix pack(const BinaryMatrix& m, std::size_t extra_cols = 0)
{
    PackedMatrix p(m.rows(), m.cols() + extra_cols);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (auto j : m.row(i))
            p.set(i, j);
    return p;
}

inline std::vector<std::size_t> identity_order(std::size_t n)
{
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    return order;
}

inline void check_permutation(std::span<const std::size_t> order, std::size_t n)
{
    if (order.size() != n)
        throw std::invalid_argument("column_order: wrong length");
    std::vector<bool> seen(n, false);
    for (auto c : order) {
        if (c >= n || seen[c])
            throw std::invalid_argument("column_order: not a permutation");
        seen[c] = true;
    }
}

} // namespace detail

/// Incrementally maintained echelon basis of a subspace of GF(2)^n.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t n) : n_(n) {}

    std::size_t dimension() const { return pivots_.size(); }

    /// Adds `v` if it is independent of the current span; returns whether it was.
    bool insert(const BinaryVector& v)
    {
        auto reduced = reduce(v);
        auto lead = leading_bit(reduced);
        if (!lead)
            return false;
        rows_.push_back(std::move(reduced));
        pivots_.push_back(*lead);
        return true;
    }

    bool contains(const BinaryVector& v) const { return !leading_bit(reduce(v)); }

private:
    using Word = detail::PackedMatrix::Word;

    std::vector<Word> reduce(const BinaryVector& v) const
    {
        if (v.size() != n_)
            throw std::invalid_argument("EchelonBasis: length mismatch");
        std::vector<Word> w((n_ + 63) / 64, 0);
        for (auto i : v.support())
            w[i / 64] ^= Word{1} << (i % 64);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            auto p = pivots_[r];
            if ((w[p / 64] >> (p % 64)) & 1u)
                for (std::size_t k = 0; k < w.size(); ++k)
                    w[k] ^= rows_[r][k];
        }
        return w;
    }

    static std::optional<std::size_t> leading_bit(const std::vector<Word>& w)
    {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k])
                return k * 64 + static_cast<std::size_t>(std::countr_zero(w[k]));
        return std::nullopt;
    }

    std::size_t n_;
    std::vector<std::vector<Word>> rows_;
    std::vector<std::size_t> pivots_;
};

inline BinaryMatrix transpose(const BinaryMatrix& m)
{
    return BinaryMatrix::from_rows(m.cols(), m.rows(), m.column_supports());
}

inline BinaryVector mat_vec(const BinaryMatrix& m, const BinaryVector& v)
{
    if (v.size() != m.cols())
        throw std::invalid_argument("mat_vec: vector length " + std::to_string(v.size()) +
                                    " does not match matrix columns " +
                                    std::to_string(m.cols()));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        const auto& s = v.support();
        std::size_t overlap = 0;
        auto a = r.begin();
        auto b = s.begin();
        while (a != r.end() && b != s.end()) {
            if (*a < *b)
                ++a;
            else if (*b < *a)
                ++b;
            else {
                ++overlap;
                ++a;
                ++b;
            }
        }
        if (overlap & 1u)
            out.push_back(i);
    }
    return BinaryVector(m.rows(), std::move(out));
}

/// Dense-output syndrome accumulation: out[i] ^= parity(row i · v), where v is
/// given as 0/1 bytes. Used on hot paths that already hold dense vectors.
inline void mat_vec_dense(const BinaryMatrix& m, std::span<const std::uint8_t> v,
                          std::span<std::uint8_t> out)
{
    if (v.size() != m.cols() || out.size() != m.rows())
        throw std::invalid_argument("mat_vec_dense: dimension mismatch");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::uint8_t acc = 0;
        for (auto j : m.row(i))
            acc ^= v[j];
        out[i] = acc & 1u;
    }
}

/// A·B over GF(2).
inline BinaryMatrix multiply(const BinaryMatrix& a, const BinaryMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: inner dimensions differ");
    std::vector<std::vector<std::size_t>> rows(a.rows());
    std::vector<std::uint8_t> acc(b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (auto k : a.row(i))
            for (auto j : b.row(k))
                acc[j] ^= 1u;
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (acc[j]) {
                rows[i].push_back(j);
                acc[j] = 0;
            }
    }
    return BinaryMatrix::from_rows(a.rows(), b.cols(), std::move(rows));
}

inline BinaryMatrix kron(const BinaryMatrix& a, const BinaryMatrix& b)
{
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    std::vector<std::vector<std::size_t>> support(rows);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < b.rows(); ++k) {
            auto& r = support[i * b.rows() + k];
            for (auto j : a.row(i))
                for (auto l : b.row(k))
                    r.push_back(j * b.cols() + l);
        }
    return BinaryMatrix::from_rows(rows, cols, std::move(support));
}

/// [a | b]
inline BinaryMatrix hstack(const BinaryMatrix& a, const BinaryMatrix& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack: row counts differ");
    std::vector<std::vector<std::size_t>> support(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ra = a.row(i);
        auto rb = b.row(i);
        support[i].assign(ra.begin(), ra.end());
        for (auto j : rb)
            support[i].push_back(j + a.cols());
    }
    return BinaryMatrix::from_rows(a.rows(), a.cols() + b.cols(), std::move(support));
}

/// [a ; b]
inline BinaryMatrix vstack(const BinaryMatrix& a, const BinaryMatrix& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack: column counts differ");
    std::vector<std::vector<std::size_t>> support;
    support.reserve(a.rows() + b.rows());
    for (const auto* m : {&a, &b})
        for (std::size_t i = 0; i < m->rows(); ++i) {
            auto r = m->row(i);
            support.emplace_back(r.begin(), r.end());
        }
    return BinaryMatrix::from_rows(a.rows() + b.rows(), a.cols(), std::move(support));
}

struct RowReduction {
    BinaryMatrix reduced;             ///< transform · M, in reduced row-echelon form
    std::vector<std::size_t> pivots;  ///< pivot columns in visiting order; pivot i is in row i
    BinaryMatrix transform;           ///< invertible rows × rows matrix

    std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan reduction visiting columns in `column_order`.
inline RowReduction row_reduce(const BinaryMatrix& m, std::span<const std::size_t> column_order)
{
    detail::check_permutation(column_order, m.cols());
    auto packed = detail::pack(m, column_order, m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        packed.set(i, m.cols() + i);
    auto packed_pivots = detail::reduce_rows(packed, m.cols());

    std::vector<std::vector<std::size_t>> reduced(m.rows()), transform(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < m.cols(); ++k)
            if (packed.get(i, k))
                reduced[i].push_back(column_order[k]);
        for (std::size_t j = 0; j < m.rows(); ++j)
            if (packed.get(i, m.cols() + j))
                transform[i].push_back(j);
    }
    RowReduction out;
    out.reduced = BinaryMatrix::from_rows(m.rows(), m.cols(), std::move(reduced));
    out.transform = BinaryMatrix::from_rows(m.rows(), m.rows(), std::move(transform));
    out.pivots.reserve(packed_pivots.size());
    for (auto k : packed_pivots)
        out.pivots.push_back(column_order[k]);
    return out;
}

inline RowReduction row_reduce(const BinaryMatrix& m)
{
    auto order = detail::identity_order(m.cols());
    return row_reduce(m, order);
}

inline std::size_t rank(const BinaryMatrix& m)
{
    auto packed = detail::pack(m);
    return detail::reduce_rows(packed, m.cols()).size();
}

/// Basis of {v : M v = 0}, one vector per non-pivot column.
inline std::vector<BinaryVector> kernel_basis(const BinaryMatrix& m)
{
    auto packed = detail::pack(m);
    auto pivots = detail::reduce_rows(packed, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;

    std::vector<BinaryVector> basis;
    basis.reserve(m.cols() - pivots.size());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<std::size_t> support{f};
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (packed.get(i, f))
                support.push_back(pivots[i]);
        basis.emplace_back(m.cols(), std::move(support));
    }
    return basis;
}

/// Some x with M x = b, supported on pivot columns; nullopt when b is not in
/// the column space.
inline std::optional<BinaryVector> solve(const BinaryMatrix& m, const BinaryVector& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: right-hand side length does not match matrix rows");
    auto packed = detail::pack(m, 1);
    for (auto i : b.support())
        packed.set(i, m.cols());
    auto pivots = detail::reduce_rows(packed, m.cols());
    for (std::size_t i = pivots.size(); i < m.rows(); ++i)
        if (packed.get(i, m.cols()))
            return std::nullopt;
    std::vector<std::size_t> x;
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (packed.get(i, m.cols()))
            x.push_back(pivots[i]);
    return BinaryVector(m.cols(), std::move(x));
}

} // namespace qwin
