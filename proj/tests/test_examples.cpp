#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ustr/approx.hpp"
#include "ustr/factorize.hpp"
#include "ustr/listing.hpp"
#include "ustr/model.hpp"
#include "ustr/oracle.hpp"
#include "ustr/qindex.hpp"
#include "ustr/ust_format.hpp"

using namespace ustr;

namespace {

DocumentCollection fig(const std::string& name) { return read_ust_file(std::string(USTR_DATA_DIR) + "/" + name); }

Prob world_prob(const std::vector<World>& ws, const std::string& w) {
    for (const auto& x : ws) {
        if (x.text == w) return x.prob;
    }
    return -1.0;
}

std::set<std::string> factor_set(const std::vector<MaximalFactor>& fs) {
    std::set<std::string> out;
    for (const auto& f : fs) out.insert(f.symbols);
    return out;
}

}  // namespace

TEST(Examples, WorldsOfLengthFiveString) {
    const auto u = fig("fig1.ust").at(0);
    const auto worlds = enumerate_worlds(u, 0.0);
    ASSERT_EQ(worlds.size(), 12u);
    EXPECT_NEAR(world_prob(worlds, "aadaa"), 0.09, 1e-9);
    EXPECT_NEAR(world_prob(worlds, "badaa"), 0.12, 1e-9);
    EXPECT_NEAR(world_prob(worlds, "dcdca"), 0.06, 1e-9);
    Prob total = 0.0;
    for (const auto& w : worlds) total += w.prob;
    EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(Examples, WorldFloorPrunes) {
    const auto u = fig("fig1.ust").at(0);
    const auto worlds = enumerate_worlds(u, 0.1);
    ASSERT_EQ(worlds.size(), 2u);
    for (const auto& w : worlds) EXPECT_GE(w.prob, 0.1 - 1e-9);
}

TEST(Examples, GenomeOccurrenceProfile) {
    const auto u = fig("fig3.ust").at(0);
    const auto prof = oracle::profile(u, "AT");
    EXPECT_NEAR(prof.at(6), 0.12, 1e-9);
    EXPECT_NEAR(prof.at(8), 0.5, 1e-9);
    EXPECT_EQ(oracle::search(u, "AT", 0.4), std::vector<std::size_t>{9});
}

TEST(Examples, GenomeQuery) {
    const auto u = fig("fig3.ust").at(0);
    const auto idx = SubstringIndex::build(u, 0.1);
    EXPECT_EQ(idx.query("AT", 0.4), std::vector<std::size_t>{9});
    EXPECT_EQ(idx.query("AT", 0.1), (std::vector<std::size_t>{7, 9}));
    const auto hits = idx.query_hits("AT", 0.1);
    ASSERT_EQ(hits.size(), 2u);
    EXPECT_NEAR(hits[0].prob, 0.12, 1e-9);
    EXPECT_NEAR(hits[1].prob, 0.5, 1e-9);
}

TEST(Examples, CorrelatedOccurrence) {
    const auto u = fig("fig4.ust").at(0);
    EXPECT_NEAR(occurrence_probability(u, "eqz", 1), 0.18, 1e-9);
    EXPECT_NEAR(occurrence_probability(u, "fqz", 1) / 0.4, 0.4, 1e-9);
    EXPECT_NEAR(occurrence_probability(u, "qz", 2), 0.34, 1e-9);
    EXPECT_NEAR(occurrence_probability(u, "z", 3), 0.34, 1e-9);
    EXPECT_NEAR(u.marginal(3, 'z'), 0.34, 1e-9);
}

TEST(Examples, MaximalFactorsGenome) {
    const auto u = fig("fig3.ust").at(0);
    const auto fs = maximal_factors(u, 0.15, 5);
    EXPECT_EQ(factor_set(fs), (std::set<std::string>{"QPA", "QPF", "TPA", "TPF"}));
    for (const auto& f : fs) EXPECT_EQ(f.start, 5u);
}

TEST(Examples, MaximalFactorsGeneralString) {
    const auto u = fig("fig7.ust").at(0);
    const auto fs = maximal_factors(u, 0.1, 1);
    std::map<std::string, Prob> got;
    for (const auto& f : fs) got[f.symbols] = f.prob;
    ASSERT_EQ(got.size(), 4u);
    EXPECT_NEAR(got.at("QQP"), 0.21, 1e-9);
    EXPECT_NEAR(got.at("QPPA"), 0.196, 1e-9);
    EXPECT_NEAR(got.at("QPPF"), 0.147, 1e-9);
    EXPECT_NEAR(got.at("SPP"), 0.21, 1e-9);
}

TEST(Examples, ListingCollection) {
    const auto docs = fig("fig2.ust");
    const auto idx = ListingIndex::build(docs, 0.05, Metric::maximum);
    EXPECT_EQ(idx.list("BF", 0.1), std::vector<std::size_t>{0});
    EXPECT_EQ(idx.list("A", 0.4), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(oracle::list(docs, "BF", 0.1, Metric::maximum), std::vector<std::size_t>{0});
}

TEST(Examples, RelevanceMetrics) {
    const auto d = fig("fig5.ust").at(0);
    EXPECT_NEAR(relevance(d, "BFA", Metric::maximum), 0.09, 1e-9);
    EXPECT_NEAR(relevance(d, "BFA", Metric::or_formula), 0.18281, 1e-5);
    EXPECT_NEAR(relevance(d, "BFA", Metric::or_formula), 0.183 - 0.045 * 0.09 * 0.048, 1e-12);
    EXPECT_NEAR(relevance(d, "BFA", Metric::or_independent), 1.0 - 0.955 * 0.91 * 0.952, 1e-12);
    EXPECT_NEAR(oracle::document_relevance(d, "BFA", Metric::or_formula), 0.1828056, 1e-9);
}

TEST(Examples, DeterministicTransform) {
    const auto u = UncertainString::deterministic("s", "abc");
    const auto tt = transform(u, 0.5);
    std::string t;
    for (std::size_t k = 0; k < tt.size(); ++k) t.push_back(is_separator(tt.text()[k]) ? '$' : code_symbol(tt.text()[k]));
    EXPECT_EQ(t, "abc$bc$c$");
}

TEST(Examples, ApproximateGenomeQuery) {
    const auto u = fig("fig3.ust").at(0);
    const auto idx = LinkIndex::build(u, 0.1, 1e-9);
    EXPECT_EQ(idx.query("AT", 0.4), std::vector<std::size_t>{9});
    const auto loose = LinkIndex::build(u, 0.1, 0.5);
    const auto got = loose.query("AT", 0.4);
    EXPECT_TRUE(std::find(got.begin(), got.end(), 9u) != got.end());
}
