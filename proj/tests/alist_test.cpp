#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <qwin/alist.hpp>

#include "oracles.hpp"

using namespace qwin;

TEST(Alist, ReadsHandWrittenFile)
{
    // 3 columns, 2 rows; H = [1 1 0; 0 1 1]
    std::istringstream in("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n");
    auto h = read_alist(in);
    EXPECT_EQ(h, BinaryMatrix::from_strings({"110", "011"}));
}

TEST(Alist, RoundTripsRandomMatrices)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
        std::size_t r = 1 + rng() % 12, c = 1 + rng() % 25;
        auto h = oracle::to_matrix(oracle::random_dense(r, c, rng, 0.3), c);
        std::stringstream buf;
        write_alist(buf, h);
        EXPECT_EQ(read_alist(buf), h);
    }
}

TEST(Alist, RejectsMalformedInput)
{
    std::istringstream truncated("3 2\n2 2\n1 2 1\n");
    EXPECT_THROW(read_alist(truncated), AlistError);

    // Column lists disagree with row lists.
    std::istringstream inconsistent("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n3 0\n1 2\n2 3\n");
    EXPECT_THROW(read_alist(inconsistent), AlistError);

    std::istringstream out_of_range("2 1\n1 2\n1 1\n2\n1\n5\n1 2\n");
    EXPECT_THROW(read_alist(out_of_range), AlistError);
}

TEST(Alist, FileRoundTrip)
{
    auto h = BinaryMatrix::from_strings({"1011", "0110", "1101"});
    auto path = ::testing::TempDir() + "alist_roundtrip.alist";
    store_alist(path, h);
    EXPECT_EQ(load_alist(path), h);
    EXPECT_THROW(load_alist(path + ".missing"), AlistError);
}
