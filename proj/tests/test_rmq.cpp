#include <gtest/gtest.h>

#include <cereal/archives/binary.hpp>
#include <cereal/types/vector.hpp>
#include <random>
#include <sstream>

#include "ustr/errors.hpp"
#include "ustr/rmq.hpp"

using namespace ustr;

namespace {

std::size_t naive_argmax(const std::vector<double>& v, std::size_t l, std::size_t r) {
    std::size_t best = l;
    for (std::size_t k = l + 1; k <= r; ++k) {
        if (v[k] > v[best]) best = k;
    }
    return best;
}

}  // namespace

TEST(Rmq, SmallExample) {
    const RangeMaxIndex idx({0.7, 0.21, 0.21});
    EXPECT_EQ(idx.argmax(0, 2), 0u);
    EXPECT_EQ(idx.argmax(1, 2), 1u);
    EXPECT_EQ(idx.argmax(2, 2), 2u);
}

TEST(Rmq, RejectsBadRanges) {
    const RangeMaxIndex idx({1.0, 2.0});
    EXPECT_THROW(idx.argmax(1, 0), RangeError);
    EXPECT_THROW(idx.argmax(0, 2), RangeError);
    EXPECT_THROW(RangeMaxIndex{}.argmax(0, 0), RangeError);
}

TEST(Rmq, MatchesNaiveScanWithTies) {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 40; ++round) {
        const std::size_t n = 1 + rng() % 300;
        std::vector<double> v(n);
        // few distinct values so ties are common
        for (auto& x : v) x = static_cast<double>(rng() % 6) / 5.0;
        const RangeMaxIndex idx(v);
        for (int q = 0; q < 400; ++q) {
            std::size_t l = rng() % n, r = rng() % n;
            if (l > r) std::swap(l, r);
            ASSERT_EQ(idx.argmax(l, r), naive_argmax(v, l, r)) << "n=" << n << " [" << l << "," << r << "]";
        }
    }
}

TEST(Rmq, SerializationKeepsAnswers) {
    std::mt19937_64 rng(6);
    std::vector<double> v(1000);
    for (auto& x : v) x = static_cast<double>(rng() % 1000) / 999.0;
    const RangeMaxIndex idx(v);
    std::stringstream buf;
    {
        cereal::BinaryOutputArchive out(buf);
        out(idx);
    }
    RangeMaxIndex back;
    {
        cereal::BinaryInputArchive in(buf);
        in(back);
    }
    ASSERT_EQ(back.size(), idx.size());
    for (int q = 0; q < 2000; ++q) {
        std::size_t l = rng() % v.size(), r = rng() % v.size();
        if (l > r) std::swap(l, r);
        ASSERT_EQ(back.argmax(l, r), idx.argmax(l, r));
    }
}
