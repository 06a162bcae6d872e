#include <gtest/gtest.h>

#include <map>
#include <set>

#include "ustr/errors.hpp"
#include "ustr/kernels.hpp"
#include "ustr/oracle.hpp"
#include "ustr/qindex.hpp"
#include "ustr/ust_format.hpp"
#include "ustr/verify.hpp"

using namespace ustr;

namespace {

UncertainString genome() { return read_ust_file(std::string(USTR_DATA_DIR) + "/fig3.ust").at(0); }

}  // namespace

TEST(SubstringIndex, MatchesOracleOnRandomInstances) {
    verify::SuiteConfig cfg;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto inst = verify::random_instance(seed, cfg);
        const auto idx = SubstringIndex::build(inst.u, inst.tau_min);
        const auto patterns = verify::probe_patterns({inst.u}, inst.tau_min, seed, cfg);
        const auto f = verify::check_substring(inst.u, idx, patterns);
        ASSERT_FALSE(f.has_value()) << "seed " << seed << ": " << *f;
    }
}

TEST(SubstringIndex, EveryQueryPathMatchesOracle) {
    verify::SuiteConfig cfg;
    cfg.max_n = 30;
    for (std::uint64_t seed = 50; seed < 70; ++seed) {
        const auto inst = verify::random_instance(seed, cfg);
        const auto patterns = verify::probe_patterns({inst.u}, inst.tau_min, seed, cfg);
        for (std::size_t cutoff : {1, 2, 3}) {
            for (std::size_t limit : {0, 4, 100}) {
                IndexConfig ic;
                ic.short_cutoff = cutoff;
                ic.long_limit = limit;
                const auto idx = SubstringIndex::build(inst.u, inst.tau_min, ic);
                ASSERT_EQ(idx.short_cutoff(), cutoff);
                const auto f = verify::check_substring(inst.u, idx, patterns);
                ASSERT_FALSE(f.has_value()) << "seed " << seed << " cutoff " << cutoff << " limit " << limit << ": "
                                            << *f;
            }
        }
    }
}

TEST(SubstringIndex, PathSelection) {
    IndexConfig ic;
    ic.short_cutoff = 2;
    ic.long_limit = 4;
    const auto idx = SubstringIndex::build(genome(), 0.1, ic);
    EXPECT_EQ(idx.path_for(1), QueryPath::short_table);
    EXPECT_EQ(idx.path_for(2), QueryPath::short_table);
    EXPECT_EQ(idx.path_for(3), QueryPath::long_table);
    EXPECT_EQ(idx.path_for(idx.long_limit()), QueryPath::long_table);
    EXPECT_EQ(idx.path_for(idx.long_limit() + 1), QueryPath::scan);
    EXPECT_LE(idx.long_limit(), 4u);
}

TEST(SubstringIndex, DefaultShortCutoffIsLogOfLength) {
    const auto idx = SubstringIndex::build(genome(), 0.1);
    std::size_t log2n = 0;
    while ((std::size_t{2} << log2n) <= idx.text().tt.size()) ++log2n;
    EXPECT_EQ(idx.short_cutoff(), std::max<std::size_t>(1, log2n));
}

TEST(SubstringIndex, ShortPathRmqCallsBoundedByOutputs) {
    verify::SuiteConfig cfg;
    for (std::uint64_t seed = 200; seed < 230; ++seed) {
        const auto inst = verify::random_instance(seed, cfg);
        const auto idx = SubstringIndex::build(inst.u, inst.tau_min);
        for (const auto& p : verify::probe_patterns({inst.u}, inst.tau_min, seed, cfg)) {
            if (idx.path_for(p.size()) != QueryPath::short_table) continue;
            for (Prob tau : verify::tau_grid(inst.tau_min)) {
                QueryStats st;
                const auto got = idx.query(p, tau, st);
                ASSERT_EQ(st.outputs, got.size());
                ASSERT_LE(st.rmq_calls, 2 * st.outputs + 1);
            }
        }
    }
}

// C_i keeps at most one entry per source position inside each depth-i group.
TEST(SubstringIndex, ShortTablesDeduplicatePositions) {
    const auto idx = SubstringIndex::build(genome(), 0.1);
    const auto keys = position_keys(idx.text());
    const std::size_t tables = std::min(idx.short_cutoff(), idx.text().tt.max_factor_length());
    for (std::size_t i = 1; i <= tables; ++i) {
        const auto& table = idx.short_table(i);
        for (const auto& g : kernels::depth_groups(idx.text(), i)) {
            std::set<std::uint32_t> seen;
            for (std::size_t k = g.begin; k < g.end; ++k) {
                if (table.value(k) > 0.0) { ASSERT_TRUE(seen.insert(keys[k]).second) << "length " << i; }
            }
        }
    }
}

TEST(SubstringIndex, ThresholdBelowFloorIsRefused) {
    const auto idx = SubstringIndex::build(genome(), 0.2);
    EXPECT_THROW(idx.query("AT", 0.1), ThresholdError);
    EXPECT_NO_THROW(idx.query("AT", 0.2));
    EXPECT_NO_THROW(idx.query("AT", 0.2 - 1e-12));
}

TEST(SubstringIndex, UnknownSymbolsGiveNoResults) {
    const auto idx = SubstringIndex::build(genome(), 0.1);
    EXPECT_TRUE(idx.query("Z", 0.1).empty());
    EXPECT_TRUE(idx.query("A$", 0.1).empty());
    EXPECT_TRUE(idx.query("ATATATATATATATAT", 0.1).empty());
}

TEST(SubstringIndex, HitsCarryOccurrenceProbabilities) {
    const auto u = genome();
    const auto idx = SubstringIndex::build(u, 0.1);
    for (const std::string p : {"P", "PA", "QPA", "FPQP", "SFPQPA"}) {
        for (const auto& h : idx.query_hits(p, 0.1)) {
            EXPECT_NEAR(h.prob, occurrence_probability(u, p, h.position), 1e-12) << p;
        }
    }
}
