#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "commands.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "ustr");
    std::ostringstream out, err;
    const int code = ustr::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(USTR_DATA_DIR) + "/" + name; }

std::string temp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("ustr_cli_" + name)).string();
}

}  // namespace

TEST(Cli, QueryFromBuiltIndex) {
    const auto idx = temp("fig3.idx");
    ASSERT_EQ(run({"build", data("fig3.ust"), "--tau-min", "0.1", "-o", idx}).code, 0);
    const auto r = run({"query", "--index", idx, "--pattern", "AT", "--tau", "0.4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "9\n");
    const auto batch = run({"query", "--index", idx, "-p", "AT", "-p", "ZZ", "-p", "A", "--tau", "0.1"});
    EXPECT_EQ(batch.out, "7 9\n\n7 9 11\n");
    std::remove(idx.c_str());
}

TEST(Cli, ListFromBuiltIndex) {
    const auto idx = temp("fig2.idx");
    ASSERT_EQ(run({"build", data("fig2.ust"), "--tau-min", "0.05", "-o", idx}).code, 0);
    const auto r = run({"list", "--index", idx, "--pattern", "BF", "--tau", "0.1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "d1\n");
    std::remove(idx.c_str());
}

TEST(Cli, InMemoryInputAndJson) {
    const auto r = run({"query", data("fig3.ust"), "--tau-min", "0.1", "-p", "AT", "--tau", "0.1", "--json"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["pattern"], "AT");
    ASSERT_EQ(j["results"].size(), 2u);
    EXPECT_EQ(j["results"][1]["position"], 9);
    EXPECT_NEAR(j["results"][0]["probability"].get<double>(), 0.12, 1e-9);

    const auto l = run({"list", data("fig5.ust"), "--metric", "or", "--tau-min", "0.01", "-p", "BFA", "--tau", "0.1",
                        "--json"});
    ASSERT_EQ(l.code, 0);
    const auto lj = nlohmann::json::parse(l.out);
    EXPECT_NEAR(lj["results"][0]["relevance"].get<double>(), 0.18281, 1e-5);

    const auto a = run({"approx", data("fig3.ust"), "--epsilon", "1e-9", "-p", "AT", "--tau", "0.4"});
    EXPECT_EQ(a.out, "9\n");
}

TEST(Cli, PatternFile) {
    const auto pf = temp("patterns.txt");
    {
        std::ofstream out(pf);
        out << "AT\nPA\n";
    }
    const auto r = run({"query", data("fig3.ust"), "--patterns", pf, "--tau", "0.4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "9\n6\n");
    std::remove(pf.c_str());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"query", data("fig3.ust"), "--tau-min", "0.2", "-p", "AT", "--tau", "0.1"}).code, 3);
    const auto cap = run({"query", data("fig3.ust"), "--length-cap", "5", "-p", "AT", "--tau", "0.4"});
    EXPECT_EQ(cap.code, 4);
    EXPECT_NE(cap.err.find("--length-cap"), std::string::npos);

    const auto bad = temp("bad.ust");
    {
        std::ofstream out(bad);
        out << "ustr s\npos A:0.5 B:0.4\nend\n";
    }
    const auto parse = run({"query", bad, "-p", "A", "--tau", "0.4"});
    EXPECT_EQ(parse.code, 2);
    EXPECT_NE(parse.err.find("bad.ust:2"), std::string::npos);
    std::remove(bad.c_str());

    EXPECT_EQ(run({"query", "--index", temp("missing.idx"), "-p", "A", "--tau", "0.4"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"query", data("fig3.ust"), "-p", "A"}).code, 2);
    EXPECT_EQ(run({"list", data("fig3.ust"), "-p", "A", "--tau", "0.4", "--metric", "sum"}).code, 2);
}

TEST(Cli, GenIsDeterministic) {
    const auto a = run({"gen", "--random", "200", "--alphabet", "ACGT", "--seed", "3", "--correlations", "2"});
    const auto b = run({"gen", "--random", "200", "--alphabet", "ACGT", "--seed", "3", "--correlations", "2"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("ustr s\n", 0), 0u);
    EXPECT_NE(a.out.find("corr "), std::string::npos);

    const auto chunks = run({"gen", "--random", "500", "--alphabet", "ACGT", "--chunk-mean", "100", "--chunk-sd",
                             "10", "--chunk-min", "50", "--chunk-max", "150", "--name", "d"});
    ASSERT_EQ(chunks.code, 0);
    EXPECT_NE(chunks.out.find("ustr d1\n"), std::string::npos);
    EXPECT_NE(chunks.out.find("ustr d2\n"), std::string::npos);
}

TEST(Cli, VerifySuiteAndIndex) {
    const auto r = run({"verify", "--count", "10", "--seed", "5"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("ok: 10 instances", 0), 0u);

    const auto idx = temp("fig2v.idx");
    ASSERT_EQ(run({"build", data("fig2.ust"), "--tau-min", "0.05", "--metric", "orx", "-o", idx}).code, 0);
    const auto v = run({"verify", "--index", idx, "--exhaustive", "2", "--conservation"});
    EXPECT_EQ(v.code, 0) << v.err;
    std::remove(idx.c_str());
}

TEST(Cli, BenchWritesCsv) {
    const auto r = run({"bench", "--axis", "n", "--values", "300,600", "--queries", "20", "--m", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string header, row1, row2, extra;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    EXPECT_EQ(header.rfind("axis,value,", 0), 0u);
    EXPECT_EQ(row1.rfind("n,300,substring,300,", 0), 0u);
    EXPECT_EQ(row2.rfind("n,600,", 0), 0u);
    EXPECT_FALSE(std::getline(in, extra));

    const auto l = run({"bench", "--axis", "tau", "--values", "0.2", "--kind", "listing", "--n", "400", "--queries",
                        "10", "--docs-mean", "50"});
    EXPECT_EQ(l.code, 0) << l.err;
    const auto a = run({"bench", "--axis", "theta", "--values", "0.1", "--kind", "approx", "--n", "300", "--queries",
                        "10"});
    EXPECT_EQ(a.code, 0) << a.err;
}
