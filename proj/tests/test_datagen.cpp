#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "ustr/datagen.hpp"
#include "ustr/ust_format.hpp"

using namespace ustr;

TEST(Datagen, RngRanges) {
    Rng rng(42);
    for (int k = 0; k < 10000; ++k) {
        ASSERT_LT(rng.below(7), 7u);
        const double u = rng.unit();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
    Rng a(9), b(9);
    for (int k = 0; k < 100; ++k) ASSERT_EQ(a.next(), b.next());
}

TEST(Datagen, SameSeedSameString) {
    GenConfig g;
    g.seed = 17;
    g.correlations = 3;
    const std::string corpus = random_corpus(300, "ACDEFGHIK", 4);
    std::ostringstream a, b;
    write_ust(a, {generate(corpus, g)});
    write_ust(b, {generate(corpus, g)});
    EXPECT_EQ(a.str(), b.str());
    g.seed = 18;
    std::ostringstream c;
    write_ust(c, {generate(corpus, g)});
    EXPECT_NE(a.str(), c.str());
}

TEST(Datagen, UncertainFractionAndChoices) {
    const std::string corpus = random_corpus(500, "ACGT", 3);
    for (double theta : {0.0, 0.1, 0.37, 1.0}) {
        for (std::size_t choices : {2, 3, 5}) {
            GenConfig g;
            g.theta = theta;
            g.choices = choices;
            g.alphabet = "ACGT";
            g.neighborhood_samples = 50;
            const auto u = generate(corpus, g);
            ASSERT_EQ(u.size(), corpus.size());
            ASSERT_TRUE(validate(u).empty());
            std::size_t uncertain = 0;
            for (std::size_t i = 1; i <= u.size(); ++i) {
                const auto& d = u.at(i);
                ASSERT_LE(d.size(), choices);
                if (d.is_deterministic()) {
                    ASSERT_EQ(d.entries()[0].symbol, corpus[i - 1]);
                } else {
                    ++uncertain;
                }
            }
            ASSERT_EQ(uncertain, static_cast<std::size_t>(std::llround(theta * 500.0)));
        }
    }
}

TEST(Datagen, InjectedCorrelationsAreValid) {
    GenConfig g;
    g.theta = 0.5;
    g.correlations = 6;
    g.seed = 5;
    const auto u = generate(random_corpus(120, "ACGT", 8), g);
    EXPECT_TRUE(validate(u).empty());
    EXPECT_EQ(u.correlations().size(), 6u);
    for (const auto& c : u.correlations()) {
        EXPECT_NE(c.src_pos, c.cond_pos);
        EXPECT_LE(c.src_pos > c.cond_pos ? c.src_pos - c.cond_pos : c.cond_pos - c.src_pos, g.edit_radius);
        EXPECT_DOUBLE_EQ(std::round(c.p_plus * 100.0) / 100.0, c.p_plus);
    }
    EXPECT_TRUE(generate(random_corpus(120, "ACGT", 8), GenConfig{}).correlations().empty());
}

TEST(Datagen, RejectsBadConfig) {
    GenConfig g;
    EXPECT_THROW(generate("", g), std::invalid_argument);
    g.choices = 1;
    EXPECT_THROW(generate("ACGT", g), std::invalid_argument);
    g.choices = 2;
    g.theta = 1.5;
    EXPECT_THROW(generate("ACGT", g), std::invalid_argument);
    EXPECT_THROW(generate("AC GT", GenConfig{}), std::invalid_argument);
}

TEST(Datagen, ChunksCoverCorpus) {
    const std::string corpus = random_corpus(5000, "ACGT", 1);
    const auto pieces = chunk_corpus(corpus, 100, 30, 20, 200, 2);
    std::string joined;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        joined += pieces[k];
        ASSERT_LE(pieces[k].size(), 200u);
        if (k + 1 < pieces.size()) { ASSERT_GE(pieces[k].size(), 20u); }
    }
    EXPECT_EQ(joined, corpus);
    const double mean = static_cast<double>(corpus.size()) / static_cast<double>(pieces.size());
    EXPECT_NEAR(mean, 100.0, 15.0);
    EXPECT_THROW(chunk_corpus(corpus, 10, 1, 0, 5, 1), std::invalid_argument);
}
