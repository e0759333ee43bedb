#pragma once

// Base matrices of the hypergraph-product fixtures, row by row. Each is a
// (3,4)-regular parity-check matrix A; the fixture code is hgp(A).

#include <array>
#include <optional>
#include <span>
#include <string_view>

namespace qwin::fixtures {

struct BaseMatrixFixture {
    std::string_view name;
    std::size_t n;  ///< qubits of hgp(A)
    std::size_t k;  ///< logical qubits of hgp(A)
    std::optional<std::size_t> distance;  ///< published distance, when known
    std::span<const std::string_view> rows;
};

inline constexpr std::array<std::string_view, 15> kHgp625Rows{
    "00011000000000000101",
    "01000010000000100001",
    "00000100010000011000",
    "00100010000001001000",
    "00000000110100000010",
    "00001000001000110000",
    "00000001010010000100",
    "01110000000010000000",
    "00000100100010100000",
    "00000001001100001000",
    "00010101000000000010",
    "10000000000101000001",
    "10001010000000000010",
    "10100000100000010000",
    "01000000001001000100",
};

inline constexpr std::array<std::string_view, 18> kHgp900Rows{
    "010000000000001100100000",
    "000000110000000100000010",
    "000100001000000000010001",
    "001000000001010000000001",
    "000000000101000010010000",
    "000001001000000001000010",
    "110000010000000010000000",
    "000001000000111000000000",
    "100000000010000000100001",
    "000010000000000010000110",
    "010010100001000000000000",
    "000100010000001001000000",
    "000000001010000000001100",
    "100010000000000000011000",
    "001001100010000000000000",
    "000000000100010000100100",
    "001000000000100101000000",
    "000100000100100000001000",
};

inline constexpr std::array<std::string_view, 21> kHgp1225Rows{
    "0000010000001010000100000000",
    "0101000100000000100000000000",
    "0000000010000101000001000000",
    "1100000000000000000000011000",
    "0000101000000001000100000000",
    "0000000000010000001000100001",
    "0100100000100000010000000000",
    "1001000000000000000100100000",
    "0000000010100000100000000001",
    "0000000000000000010000100110",
    "0010000100000001010000000000",
    "1010000000000010001000000000",
    "0000100000000000001011000000",
    "0000000000011100000000001000",
    "0000010000000000000000010101",
    "0000001001000000000000001010",
    "0010000001110000000000000000",
    "0000000100001000000010010000",
    "0000000010000010000010000010",
    "0001010001000000000001000000",
    "0000001000000100100000000100",
};

inline constexpr std::array<std::string_view, 24> kHgp1600Rows{
    "01000000000000000000000001101000",
    "00000000000000010000000010000011",
    "00000010010000000000000000110000",
    "10000000000000000001100000000100",
    "00010000000010000000010000000001",
    "00111000000000001000000000000000",
    "10000000000001000010000001000000",
    "10001010000000010000000000000000",
    "00000001001001000000010000000000",
    "00000001000000001000000100100000",
    "01000100000000110000000000000000",
    "00001000000000000100001000001000",
    "00000000100000000010000000010010",
    "00000101100000000100000000000000",
    "01100000010000000000100000000000",
    "00100000001000100000000000000010",
    "00000100010011000000000000000000",
    "00000000000000000010001100000001",
    "00000000000100100000000100000100",
    "00000010001000000001001000000000",
    "00000000000100001000000011000000",
    "00010000000000000100000000010100",
    "00000000000010000001000010001000",
    "00000000100100000000110000000000",
};

inline constexpr std::array<std::string_view, 30> kHgp2500Rows{
    "0000000000000100000001000000010000000100",
    "1001000000000000000000010000000000000001",
    "0100001000000000000001000000000000000010",
    "0000100000000000000000000011000000100000",
    "1000000000000000100000100000000010000000",
    "0000000000000100000000010000001000010000",
    "0010000000011001000000000000000000000000",
    "0000000100010000100100000000000000000000",
    "0010000010000000010000000000000000100000",
    "0000000010100000000000000000010100000000",
    "0000000000000000001000000110000010000000",
    "0001000000000000001000000000000000001100",
    "0000000000000001000010000001001000000000",
    "0000010000100010000000000000000000010000",
    "0000001000000000000000010000100000100000",
    "0000000000001100000000001000000010000000",
    "0000000100000000000000000100000000010010",
    "0010000000000000000000000100000001000001",
    "0001000110000000000010000000000000000000",
    "0100100000000000000100000000000000000001",
    "0000110000000000000000100000000000000100",
    "0000000000000010110001000000000000000000",
    "0000000001010000000000000010010000000000",
    "1000000000000000000000000001000100000010",
    "0100000000101000000000000000100000000000",
    "0000011000000001001000000000000000000000",
    "0000000000000000000100001000000100001000",
    "0000000001000000000000100000100001000000",
    "0000000000000010000010001000000001000000",
    "0000000001000000010000000000001000001000",
};

inline constexpr std::array<BaseMatrixFixture, 5> kBaseMatrices{{
    {"hgp_625", 625, 25, 8, kHgp625Rows},
    {"hgp_900", 900, 36, 10, kHgp900Rows},
    {"hgp_1225", 1225, 49, std::nullopt, kHgp1225Rows},
    {"hgp_1600", 1600, 64, std::nullopt, kHgp1600Rows},
    {"hgp_2500", 2500, 100, std::nullopt, kHgp2500Rows},
}};

} // namespace qwin::fixtures
