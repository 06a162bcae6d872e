#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "ustr/datagen.hpp"
#include "ustr/errors.hpp"
#include "ustr/model.hpp"
#include "ustr/verify.hpp"

using namespace ustr;

namespace {

UncertainString small_random(std::uint64_t seed, std::size_t n, double theta) {
    GenConfig g;
    g.theta = theta;
    g.alphabet = "ACG";
    g.choices = 3;
    g.seed = seed;
    return generate(random_corpus(n, "ACG", seed + 7), g, "r");
}

bool has_rule(const std::vector<Violation>& vs, std::size_t pos) {
    for (const auto& v : vs) {
        if (v.position == pos) return true;
    }
    return false;
}

}  // namespace

TEST(Model, ValidStringHasNoViolations) {
    UncertainString u("s", {{{'a', 0.5}, {'b', 0.5}}, {{'c', 1.0}}});
    EXPECT_TRUE(validate(u).empty());
}

TEST(Model, DetectsBadDistributions) {
    UncertainString sum("s", {{{'a', 0.5}, {'b', 0.4}}, {{'c', 1.0}}});
    EXPECT_TRUE(has_rule(validate(sum), 1));

    UncertainString sep("s", {{{'a', 1.0}}, {{'$', 1.0}}});
    EXPECT_TRUE(has_rule(validate(sep), 2));

    UncertainString empty_pos("s", {{{'a', 1.0}}, PositionDistribution{}});
    EXPECT_TRUE(has_rule(validate(empty_pos), 2));

    UncertainString dup("s", {{{'a', 0.5}, {'a', 0.5}}});
    EXPECT_FALSE(validate(dup).empty());
}

TEST(Model, DetectsBadCorrelations) {
    std::vector<PositionDistribution> ps{{{'e', 0.6}, {'f', 0.4}}, {{'z', 1.0}}};
    UncertainString out_of_range("s", ps, {{2, 'z', 5, 'e', 0.3, 0.4}});
    EXPECT_FALSE(validate(out_of_range).empty());
    UncertainString absent_symbol("s", ps, {{2, 'y', 1, 'e', 0.3, 0.4}});
    EXPECT_FALSE(validate(absent_symbol).empty());
    UncertainString self("s", ps, {{2, 'z', 2, 'z', 0.3, 0.4}});
    EXPECT_FALSE(validate(self).empty());
    UncertainString fine("s", ps, {{2, 'z', 1, 'e', 0.3, 0.4}});
    EXPECT_TRUE(validate(fine).empty());
}

TEST(Model, CollectionNamesMustBeUnique) {
    const auto a = UncertainString::deterministic("d", "AB");
    EXPECT_FALSE(validate(DocumentCollection{a, a}).empty());
    EXPECT_FALSE(validate(DocumentCollection{}).empty());
    EXPECT_TRUE(validate(DocumentCollection{a, UncertainString::deterministic("e", "C")}).empty());
}

TEST(Model, WindowOutsideStringThrows) {
    const auto u = UncertainString::deterministic("s", "abc");
    EXPECT_THROW(occurrence_probability(u, "bcd", 2), RangeError);
    EXPECT_THROW(occurrence_probability(u, "a", 0), RangeError);
    EXPECT_DOUBLE_EQ(occurrence_probability(u, "bc", 2), 1.0);
    EXPECT_DOUBLE_EQ(occurrence_probability(u, "bb", 2), 0.0);
}

TEST(Model, ExhaustiveWorldsRefusedForLongStrings) {
    const auto u = UncertainString::deterministic("s", std::string(kMaxExhaustiveWorlds + 1, 'a'));
    EXPECT_THROW(enumerate_worlds(u, 0.0), CapacityError);
    EXPECT_EQ(enumerate_worlds(u, 0.5).size(), 1u);
}

// For independent positions the occurrence probability is the mass of the
// worlds holding the pattern at that start.
TEST(Model, OccurrenceMatchesWorldMass) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto u = small_random(seed, 7, 0.5);
        const auto worlds = enumerate_worlds(u, 0.0);
        Prob total = 0.0;
        for (const auto& w : worlds) total += w.prob;
        ASSERT_NEAR(total, 1.0, 1e-9);

        std::map<std::pair<std::string, std::size_t>, Prob> mass;
        for (const auto& w : worlds) {
            for (std::size_t i = 0; i < w.text.size(); ++i) {
                for (std::size_t len = 1; i + len <= w.text.size() && len <= 3; ++len) {
                    mass[{w.text.substr(i, len), i + 1}] += w.prob;
                }
            }
        }
        for (const auto& [key, m] : mass) {
            ASSERT_NEAR(occurrence_probability(u, key.first, key.second), m, 1e-9)
                << "seed " << seed << " '" << key.first << "' at " << key.second;
        }
    }
}

TEST(Model, WorldsAreSortedAndAboveFloor) {
    const auto u = small_random(3, 9, 0.6);
    const auto ws = enumerate_worlds(u, 0.01);
    for (std::size_t k = 0; k < ws.size(); ++k) {
        EXPECT_GE(ws[k].prob, 0.01 - 1e-9);
        if (k > 0) { EXPECT_LT(ws[k - 1].text, ws[k].text); }
    }
}

TEST(Model, AlignedStringsAreExactlyThoseAboveFloor) {
    verify::SuiteConfig cfg;
    cfg.max_n = 12;
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto inst = verify::random_instance(seed, cfg);
        const auto& u = inst.u;
        for (std::size_t i = 1; i <= u.size(); ++i) {
            const auto ws = aligned_strings(u, i, inst.tau_min, 4);
            for (const auto& w : ws) {
                ASSERT_NEAR(w.prob, occurrence_probability(u, w.text, i), 1e-12);
                ASSERT_GE(w.prob, inst.tau_min - 1e-9);
            }
            // single letters are listed exactly when they reach the floor
            for (const auto& a : u.at(i).entries()) {
                const std::string one(1, a.symbol);
                const Prob p = occurrence_probability(u, one, i);
                const bool listed = std::any_of(ws.begin(), ws.end(), [&](const World& w) { return w.text == one; });
                ASSERT_EQ(listed, meets(p, inst.tau_min));
            }
        }
    }
}

TEST(Model, MarginalBlendsCorrelationBranches) {
    UncertainString u("s", {{{'e', 0.6}, {'f', 0.4}}, {{'q', 1.0}}, {{'z', 1.0}}}, {{3, 'z', 1, 'e', 0.3, 0.4}});
    EXPECT_NE(u.correlation_for(3, 'z'), nullptr);
    EXPECT_EQ(u.correlation_for(3, 'q'), nullptr);
    EXPECT_NEAR(u.marginal(3, 'z'), 0.6 * 0.3 + 0.4 * 0.4, 1e-12);
    EXPECT_NEAR(u.marginal(1, 'e'), 0.6, 1e-12);
}
