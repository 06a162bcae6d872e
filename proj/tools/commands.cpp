#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ustr/approx.hpp"
#include "ustr/container.hpp"
#include "ustr/datagen.hpp"
#include "ustr/errors.hpp"
#include "ustr/factorize.hpp"
#include "ustr/listing.hpp"
#include "ustr/qindex.hpp"
#include "ustr/ust_format.hpp"
#include "ustr/verify.hpp"

namespace ustr::cli {

namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::json;

class Mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

/// Plain text or FASTA: header and comment lines are skipped, whitespace dropped.
std::string read_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string corpus, line;
    while (std::getline(in, line)) {
        if (!line.empty() && (line[0] == '>' || line[0] == ';')) continue;
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) corpus.push_back(c);
        }
    }
    return corpus;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

DocumentCollection read_inputs(const std::vector<std::string>& files) {
    DocumentCollection docs;
    for (const auto& f : files) {
        for (auto& u : read_ust_file(f)) docs.push_back(std::move(u));
    }
    if (docs.empty()) throw Error("no uncertain strings in input");
    return docs;
}

struct BuildFlags {
    Prob tau_min = 0.1;
    std::optional<Prob> epsilon;
    std::string metric;
    std::optional<std::size_t> length_cap;
    std::optional<std::size_t> short_cutoff;
    std::optional<std::size_t> long_limit;
    bool serial = false;
};

void add_build_flags(CLI::App* cmd, BuildFlags& f) {
    cmd->add_option("--tau-min", f.tau_min, "construction threshold")->capture_default_str();
    cmd->add_option("--epsilon", f.epsilon, "build the approximate index with this error bound");
    cmd->add_option("--metric", f.metric, "listing relevance")->check(CLI::IsMember({"max", "or", "orx"}));
    cmd->add_option("--length-cap", f.length_cap, "cap on the transformed text length");
    cmd->add_option("--short-cutoff", f.short_cutoff, "longest pattern served by the per-length tables");
    cmd->add_option("--long-limit", f.long_limit, "longest pattern with a block-maxima table");
    cmd->add_flag("--serial", f.serial, "single-threaded construction");
}

IndexConfig index_config(const BuildFlags& f) {
    IndexConfig cfg;
    cfg.short_cutoff = f.short_cutoff;
    cfg.long_limit = f.long_limit;
    cfg.factorize.length_cap = f.length_cap;
    cfg.execution = f.serial ? Execution::serial : Execution::parallel;
    cfg.factorize.execution = cfg.execution;
    return cfg;
}

struct Wanted {
    bool substring = false;
    bool listing = false;
    bool approx = false;
};

Wanted default_wanted(const DocumentCollection& docs, const BuildFlags& f) {
    Wanted w;
    w.substring = docs.size() == 1;
    w.listing = docs.size() > 1 || !f.metric.empty();
    w.approx = f.epsilon.has_value();
    return w;
}

IndexContainer build_container(DocumentCollection docs, const BuildFlags& f, Wanted w) {
    const IndexConfig cfg = index_config(f);
    IndexContainer c;
    c.tau_min = f.tau_min;
    if (w.approx && docs.size() != 1) throw Error("the approximate index takes a single uncertain string");
    if (w.substring && docs.size() != 1) throw Error("the substring index takes a single uncertain string");
    if (w.substring || w.approx) {
        auto text = IndexedText::build(transform(docs.front(), f.tau_min, cfg.factorize));
        if (w.substring) c.substring = SubstringIndex::build(text, cfg);
        if (w.approx) {
            if (!f.epsilon) throw Error("the approximate index needs --epsilon");
            c.epsilon = *f.epsilon;
            c.approx = LinkIndex::build(text, *f.epsilon, cfg.execution);
        }
    }
    if (w.listing) {
        const Metric m = parse_metric(f.metric.empty() ? "max" : f.metric).value();
        c.metric = m;
        c.listing = ListingIndex::build(docs, f.tau_min, m, cfg);
    }
    c.docs = std::move(docs);
    return c;
}

/// `--index FILE` or UST files built on the fly.
struct Source {
    std::string index;
    std::vector<std::string> inputs;
    BuildFlags build;
};

void add_source_flags(CLI::App* cmd, Source& s) {
    cmd->add_option("--index", s.index, "index container written by `build`");
    cmd->add_option("inputs", s.inputs, "UST files to index in memory instead of --index");
    add_build_flags(cmd, s.build);
}

IndexContainer open_source(const Source& s, Wanted w) {
    if (!s.index.empty()) {
        if (!s.inputs.empty()) throw Error("give either --index or UST files, not both");
        return load_container(s.index);
    }
    if (s.inputs.empty()) throw Error("no input: give --index or UST files");
    return build_container(read_inputs(s.inputs), s.build, w);
}

struct QueryFlags {
    std::vector<std::string> patterns;
    std::string pattern_file;
    double tau = 0.0;
    bool json = false;
};

void add_query_flags(CLI::App* cmd, QueryFlags& q) {
    cmd->add_option("-p,--pattern", q.patterns, "pattern (repeatable)");
    cmd->add_option("--patterns", q.pattern_file, "file with one pattern per line");
    cmd->add_option("--tau", q.tau, "query threshold")->required();
    cmd->add_flag("--json", q.json, "one JSON object per query line");
}

std::vector<std::string> collect_patterns(const QueryFlags& q) {
    std::vector<std::string> out = q.patterns;
    if (!q.pattern_file.empty()) {
        for (auto& p : read_lines(q.pattern_file)) out.push_back(std::move(p));
    }
    if (out.empty()) throw Error("no patterns: give --pattern or --patterns");
    return out;
}

/// Answers the batch concurrently and prints the lines in input order.
void run_batch(const std::vector<std::string>& patterns, std::ostream& out,
               const std::function<std::string(const std::string&)>& answer) {
    std::vector<std::string> lines(patterns.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(patterns.size()); ++k) {
        try {
            lines[k] = answer(patterns[k]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (const auto& l : lines) out << l << '\n';
}

std::string join_positions(const std::vector<Hit>& hits) {
    std::string s;
    for (const Hit& h : hits) {
        if (!s.empty()) s.push_back(' ');
        s += std::to_string(h.position);
    }
    return s;
}

json hits_json(const std::string& p, double tau, const std::vector<Hit>& hits) {
    json results = json::array();
    for (const Hit& h : hits) results.push_back({{"position", h.position}, {"probability", h.prob}});
    return {{"pattern", p}, {"tau", tau}, {"results", results}};
}

int cmd_query(const Source& s, const QueryFlags& q, std::ostream& out) {
    const IndexContainer c = open_source(s, {true, false, false});
    if (!c.substring) throw Error("index has no substring index (built from a collection)");
    const auto patterns = collect_patterns(q);
    check_threshold(q.tau, c.tau_min);
    run_batch(patterns, out, [&](const std::string& p) {
        const auto hits = c.substring->query_hits(p, q.tau);
        return q.json ? hits_json(p, q.tau, hits).dump() : join_positions(hits);
    });
    return kOk;
}

int cmd_approx(const Source& s, const QueryFlags& q, std::ostream& out) {
    const IndexContainer c = open_source(s, {false, false, true});
    if (!c.approx) throw Error("index has no approximate index (rebuild with --epsilon)");
    const auto patterns = collect_patterns(q);
    check_threshold(q.tau, c.tau_min);
    run_batch(patterns, out, [&](const std::string& p) {
        const auto hits = c.approx->query_hits(p, q.tau);
        return q.json ? hits_json(p, q.tau, hits).dump() : join_positions(hits);
    });
    return kOk;
}

int cmd_list(const Source& s, const QueryFlags& q, std::ostream& out) {
    const IndexContainer c = open_source(s, {false, true, false});
    if (!c.listing) throw Error("index has no listing index (rebuild with --metric)");
    const auto patterns = collect_patterns(q);
    check_threshold(q.tau, c.tau_min);
    const ListingIndex& idx = *c.listing;
    run_batch(patterns, out, [&](const std::string& p) {
        const auto hits = idx.list_hits(p, q.tau);
        if (q.json) {
            json results = json::array();
            for (const DocHit& h : hits) {
                results.push_back({{"doc", idx.doc_name(h.doc)}, {"relevance", h.relevance}});
            }
            return json{{"pattern", p}, {"tau", q.tau}, {"metric", metric_name(idx.metric())}, {"results", results}}
                .dump();
        }
        std::string line;
        for (const DocHit& h : hits) {
            if (!line.empty()) line.push_back(' ');
            line += idx.doc_name(h.doc);
        }
        return line;
    });
    return kOk;
}

int cmd_build(const std::vector<std::string>& inputs, const BuildFlags& f, const std::string& output,
              std::ostream& err) {
    auto docs = read_inputs(inputs);
    const Wanted w = default_wanted(docs, f);
    const auto start = Clock::now();
    const IndexContainer c = build_container(std::move(docs), f, w);
    const double ms = elapsed_ms(start);
    save_container(output, c);

    std::size_t n = 0;
    for (const auto& u : c.docs) n += u.size();
    std::size_t bytes = 0;
    std::size_t t_len = 0;
    if (c.substring) {
        bytes += c.substring->text().memory_bytes() + c.substring->table_bytes();
        t_len = c.substring->text().tt.size();
    }
    if (c.approx) bytes += c.approx->table_bytes() + (c.substring ? 0 : c.approx->text().memory_bytes());
    if (c.listing) {
        bytes += c.listing->text().memory_bytes() + c.listing->table_bytes();
        t_len = std::max(t_len, c.listing->text().tt.size());
    }
    err << "built " << output << ": " << c.docs.size() << " string(s), n=" << n << ", |t|=" << t_len
        << ", " << bytes << " bytes (" << static_cast<double>(bytes) / static_cast<double>(std::max<std::size_t>(n, 1))
        << " per symbol), " << ms << " ms\n";
    return kOk;
}

struct GenFlags {
    std::string corpus_file;
    std::size_t random_length = 0;
    std::string alphabet;
    GenConfig cfg;
    std::string name = "s";
    std::optional<double> chunk_mean;
    double chunk_sd = 0.0;
    std::size_t chunk_min = 1;
    std::size_t chunk_max = 1u << 20;
    std::string output;
};

int cmd_gen(const GenFlags& g, std::ostream& out) {
    std::string corpus;
    if (!g.corpus_file.empty()) {
        corpus = read_corpus(g.corpus_file);
    } else if (g.random_length > 0) {
        if (g.alphabet.empty()) throw Error("--random needs --alphabet");
        corpus = random_corpus(g.random_length, g.alphabet, g.cfg.seed);
    } else {
        throw Error("give --corpus or --random");
    }
    GenConfig cfg = g.cfg;
    if (!g.alphabet.empty()) cfg.alphabet = g.alphabet;

    DocumentCollection docs;
    if (g.chunk_mean) {
        const auto pieces = chunk_corpus(corpus, *g.chunk_mean, g.chunk_sd, g.chunk_min, g.chunk_max, cfg.seed);
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            GenConfig c = cfg;
            c.seed = cfg.seed + k;
            docs.push_back(generate(pieces[k], c, g.name + std::to_string(k + 1)));
        }
    } else {
        docs.push_back(generate(corpus, cfg, g.name));
    }
    if (g.output.empty()) {
        write_ust(out, docs);
    } else {
        write_ust_file(g.output, docs);
    }
    return kOk;
}

struct VerifyFlags {
    Source source;
    std::size_t count = 50;
    std::uint64_t seed = 1;
    std::size_t max_n = 40;
    std::vector<double> epsilons{0.01, 0.05, 0.2, 1e-9};
    std::size_t max_pattern = 8;
    std::size_t exhaustive = 0;
    bool conservation = false;
};

std::vector<std::string> all_strings(const std::set<char>& letters, std::size_t max_len) {
    constexpr std::size_t kLimit = 200000;
    std::vector<std::string> out;
    std::vector<std::string> frontier{""};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const auto& s : frontier) {
            for (char c : letters) next.push_back(s + c);
        }
        if (out.size() + next.size() > kLimit) throw Error("--exhaustive expands to more than 200000 patterns");
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

int cmd_verify(const VerifyFlags& v, std::ostream& out) {
    verify::SuiteConfig cfg;
    cfg.max_pattern = v.max_pattern;

    if (v.source.index.empty() && v.source.inputs.empty()) {
        cfg.max_n = v.max_n;
        cfg.min_n = std::min<std::size_t>(cfg.min_n, v.max_n);
        const auto report = verify::run_suite(v.count, v.seed, cfg, v.epsilons, index_config(v.source.build));
        if (report.failure) throw Mismatch(*report.failure);
        out << "ok: " << report.instances << " instances, " << report.queries << " queries\n";
        return kOk;
    }

    IndexContainer c;
    if (v.source.index.empty()) {
        auto docs = read_inputs(v.source.inputs);
        const Wanted w = default_wanted(docs, v.source.build);
        c = build_container(std::move(docs), v.source.build, w);
    } else {
        c = open_source(v.source, {});
    }
    auto patterns = verify::probe_patterns(c.docs, c.tau_min, v.seed, cfg);
    if (v.exhaustive > 0) {
        std::set<char> letters;
        for (const auto& u : c.docs) {
            for (std::size_t i = 1; i <= u.size(); ++i) {
                for (const auto& a : u.at(i).entries()) letters.insert(a.symbol);
            }
        }
        auto extra = all_strings(letters, v.exhaustive);
        std::set<std::string> merged(patterns.begin(), patterns.end());
        merged.insert(extra.begin(), extra.end());
        patterns.assign(merged.begin(), merged.end());
    }

    std::size_t queries = 0;
    if (c.substring) {
        if (auto f = verify::check_substring(c.docs.front(), *c.substring, patterns, &queries)) throw Mismatch(*f);
        if (v.conservation) {
            if (auto f = conservation_check(c.docs.front(), c.tau_min, c.substring->text().tt)) {
                throw Mismatch("conservation: '" + f->pattern + "' at " + std::to_string(f->position) + ": " +
                               f->reason);
            }
        }
    }
    if (c.listing) {
        if (auto f = verify::check_listing(c.docs, *c.listing, patterns, &queries)) throw Mismatch(*f);
        if (v.conservation) {
            if (auto f = conservation_check(c.docs, c.tau_min, c.listing->text().tt)) {
                throw Mismatch("conservation: " + c.docs.at(f->doc).name() + " '" + f->pattern + "' at " +
                               std::to_string(f->position) + ": " + f->reason);
            }
        }
    }
    if (c.approx) {
        const auto r = verify::check_approx(c.docs.front(), *c.approx, patterns);
        if (r.failure) throw Mismatch(*r.failure);
        queries += r.checked;
    }
    out << "ok: " << patterns.size() << " patterns, " << queries << " queries\n";
    return kOk;
}

struct BenchFlags {
    std::string axis;
    std::vector<double> values;
    std::size_t n = 10000;
    double tau = 0.3;
    double tau_min = 0.1;
    std::size_t m = 6;
    double theta = 0.2;
    std::size_t queries = 200;
    std::uint64_t seed = 1;
    std::string alphabet = "ACDEFGHIKLMNPQRSTVWY";
    std::string corpus_file;
    std::string kind = "substring";
    double epsilon = 0.05;
    double docs_mean = 200;
    std::string output;
    bool serial = false;
};

int cmd_bench(const BenchFlags& b, std::ostream& out_default) {
    std::ofstream file;
    if (!b.output.empty()) {
        file.open(b.output);
        if (!file) throw Error("cannot write " + b.output);
    }
    std::ostream& out = b.output.empty() ? out_default : file;
    const std::string file_corpus = b.corpus_file.empty() ? std::string() : read_corpus(b.corpus_file);

    out << "axis,value,kind,n,theta,tau_min,tau,m,t_length,build_ms,index_bytes,bytes_per_symbol,queries,"
           "mean_query_us,mean_outputs,mean_work\n";
    for (double value : b.values) {
        std::size_t n = b.n;
        double tau = b.tau, tau_min = b.tau_min, theta = b.theta;
        std::size_t m = b.m;
        if (b.axis == "n") n = static_cast<std::size_t>(value);
        else if (b.axis == "tau") tau = value;
        else if (b.axis == "tau-min") tau_min = value;
        else if (b.axis == "m") m = static_cast<std::size_t>(value);
        else if (b.axis == "theta") theta = value;
        tau = std::max(tau, tau_min);

        std::string corpus;
        if (file_corpus.empty()) {
            corpus = random_corpus(n, b.alphabet, b.seed);
        } else {
            if (file_corpus.size() < n) throw Error("corpus shorter than n=" + std::to_string(n));
            corpus = file_corpus.substr(0, n);
        }
        GenConfig g;
        g.theta = theta;
        g.seed = b.seed;
        if (file_corpus.empty()) g.alphabet = b.alphabet;

        IndexConfig cfg;
        cfg.execution = b.serial ? Execution::serial : Execution::parallel;
        cfg.factorize.execution = cfg.execution;

        Rng rng(b.seed ^ 0x5bd1e995ULL);
        std::vector<std::string> patterns;
        for (std::size_t q = 0; q < b.queries && m <= corpus.size(); ++q) {
            patterns.push_back(corpus.substr(rng.below(corpus.size() - m + 1), m));
        }

        std::function<std::size_t(const std::string&, QueryStats&)> run_one;
        std::size_t bytes = 0, t_len = 0;
        SubstringIndex sub;
        ListingIndex lst;
        LinkIndex lnk;
        const auto start = Clock::now();
        if (b.kind == "substring" || b.kind == "approx") {
            const UncertainString u = generate(corpus, g, "s");
            auto text = IndexedText::build(transform(u, tau_min, cfg.factorize));
            t_len = text->tt.size();
            bytes = text->memory_bytes();
            if (b.kind == "substring") {
                sub = SubstringIndex::build(text, cfg);
                bytes += sub.table_bytes();
                run_one = [&](const std::string& p, QueryStats& st) { return sub.query_hits(p, tau, &st).size(); };
            } else {
                lnk = LinkIndex::build(text, b.epsilon, cfg.execution);
                bytes += lnk.table_bytes();
                run_one = [&](const std::string& p, QueryStats& st) { return lnk.query_hits(p, tau, &st).size(); };
            }
        } else if (b.kind == "listing") {
            const auto pieces = chunk_corpus(corpus, b.docs_mean, b.docs_mean / 5.0, 1, 4 * b.docs_mean, b.seed);
            DocumentCollection docs;
            for (std::size_t k = 0; k < pieces.size(); ++k) {
                GenConfig c = g;
                c.seed = g.seed + k;
                docs.push_back(generate(pieces[k], c, "d" + std::to_string(k + 1)));
            }
            lst = ListingIndex::build(docs, tau_min, Metric::maximum, cfg);
            t_len = lst.text().tt.size();
            bytes = lst.text().memory_bytes() + lst.table_bytes();
            run_one = [&](const std::string& p, QueryStats& st) { return lst.list_hits(p, tau, &st).size(); };
        } else {
            throw Error("unknown --kind " + b.kind);
        }
        const double build_ms = elapsed_ms(start);

        double total_us = 0.0, outputs = 0.0, work = 0.0;
        for (const auto& p : patterns) {
            QueryStats st;
            const auto q0 = Clock::now();
            outputs += static_cast<double>(run_one(p, st));
            total_us += elapsed_ms(q0) * 1000.0;
            work += static_cast<double>(st.work());
        }
        const double k = static_cast<double>(std::max<std::size_t>(patterns.size(), 1));
        out << b.axis << ',' << value << ',' << b.kind << ',' << n << ',' << theta << ',' << tau_min << ',' << tau
            << ',' << m << ',' << t_len << ',' << build_ms << ',' << bytes << ','
            << static_cast<double>(bytes) / static_cast<double>(n) << ',' << patterns.size() << ','
            << total_us / k << ',' << outputs / k << ',' << work / k << '\n';
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probabilistic threshold indexes over uncertain strings"};
    app.require_subcommand(1);
    std::map<CLI::App*, std::function<int()>> actions;

    GenFlags gen;
    auto* g = app.add_subcommand("gen", "generate an uncertain string (UST) from a corpus");
    g->add_option("--corpus", gen.corpus_file, "text or FASTA corpus");
    g->add_option("--random", gen.random_length, "random corpus of this length over --alphabet");
    g->add_option("--alphabet", gen.alphabet, "substitution letters");
    g->add_option("--theta", gen.cfg.theta, "fraction of uncertain positions")->capture_default_str();
    g->add_option("--choices", gen.cfg.choices, "letters kept per uncertain position")->capture_default_str();
    g->add_option("--radius", gen.cfg.edit_radius, "edit window radius")->capture_default_str();
    g->add_option("--samples", gen.cfg.neighborhood_samples, "neighbours sampled per position")
        ->capture_default_str();
    g->add_option("--seed", gen.cfg.seed, "random seed")->capture_default_str();
    g->add_option("--correlations", gen.cfg.correlations, "random pairwise correlations to inject");
    g->add_option("--name", gen.name, "string name (prefix when chunking)");
    g->add_option("--chunk-mean", gen.chunk_mean, "cut into a collection with this mean length");
    g->add_option("--chunk-sd", gen.chunk_sd, "standard deviation of chunk lengths");
    g->add_option("--chunk-min", gen.chunk_min, "shortest chunk");
    g->add_option("--chunk-max", gen.chunk_max, "longest chunk");
    g->add_option("-o,--output", gen.output, "output UST file (default stdout)");
    actions[g] = [&] { return cmd_gen(gen, out); };

    std::vector<std::string> build_inputs;
    BuildFlags build_flags;
    std::string build_output;
    auto* b = app.add_subcommand("build", "index UST file(s) into a container");
    b->add_option("inputs", build_inputs, "UST files")->required();
    b->add_option("-o,--output", build_output, "index file")->required();
    add_build_flags(b, build_flags);
    actions[b] = [&] { return cmd_build(build_inputs, build_flags, build_output, err); };

    Source query_src, list_src, approx_src;
    QueryFlags query_q, list_q, approx_q;
    auto* q = app.add_subcommand("query", "threshold substring search");
    add_source_flags(q, query_src);
    add_query_flags(q, query_q);
    actions[q] = [&] { return cmd_query(query_src, query_q, out); };

    auto* l = app.add_subcommand("list", "document listing");
    add_source_flags(l, list_src);
    add_query_flags(l, list_q);
    actions[l] = [&] { return cmd_list(list_src, list_q, out); };

    auto* a = app.add_subcommand("approx", "epsilon-approximate substring search");
    add_source_flags(a, approx_src);
    add_query_flags(a, approx_q);
    actions[a] = [&] { return cmd_approx(approx_src, approx_q, out); };

    VerifyFlags ver;
    auto* v = app.add_subcommand("verify", "cross-check indexes against the brute-force oracle");
    add_source_flags(v, ver.source);
    v->add_option("--count", ver.count, "random instances when no input is given")->capture_default_str();
    v->add_option("--seed", ver.seed, "suite seed")->capture_default_str();
    v->add_option("--max-n", ver.max_n, "longest random instance")->capture_default_str();
    v->add_option("--epsilons", ver.epsilons, "approximate index bounds for the random suite")->delimiter(',');
    v->add_option("--max-pattern", ver.max_pattern, "longest probe pattern")->capture_default_str();
    v->add_option("--exhaustive", ver.exhaustive, "also probe every string over the alphabet up to this length");
    v->add_flag("--conservation", ver.conservation, "also run the exhaustive factorization check");
    actions[v] = [&] { return cmd_verify(ver, out); };

    BenchFlags bench;
    auto* be = app.add_subcommand("bench", "CSV sweep of query cost over generated workloads");
    be->add_option("--axis", bench.axis, "swept parameter")
        ->required()
        ->check(CLI::IsMember({"n", "tau", "tau-min", "m", "theta"}));
    be->add_option("--values", bench.values, "values of the swept parameter")->required()->delimiter(',');
    be->add_option("--n", bench.n, "string length")->capture_default_str();
    be->add_option("--tau", bench.tau, "query threshold")->capture_default_str();
    be->add_option("--tau-min", bench.tau_min, "construction threshold")->capture_default_str();
    be->add_option("--m", bench.m, "pattern length")->capture_default_str();
    be->add_option("--theta", bench.theta, "fraction of uncertain positions")->capture_default_str();
    be->add_option("--queries", bench.queries, "queries per row")->capture_default_str();
    be->add_option("--seed", bench.seed, "random seed")->capture_default_str();
    be->add_option("--alphabet", bench.alphabet, "random corpus letters")->capture_default_str();
    be->add_option("--corpus", bench.corpus_file, "take the first n letters of this corpus");
    be->add_option("--kind", bench.kind, "index under test")
        ->check(CLI::IsMember({"substring", "listing", "approx"}))
        ->capture_default_str();
    be->add_option("--epsilon", bench.epsilon, "bound for --kind approx")->capture_default_str();
    be->add_option("--docs-mean", bench.docs_mean, "mean document length for --kind listing")
        ->capture_default_str();
    be->add_flag("--serial", bench.serial, "single-threaded construction");
    be->add_option("-o,--output", bench.output, "CSV file (default stdout)");
    actions[be] = [&] { return cmd_bench(bench, out); };

    std::vector<const char*> argv;
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParse;
    }

    try {
        for (auto* sub : app.get_subcommands()) return actions.at(sub)();
        return kFailure;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const ThresholdError& e) {
        err << "threshold error: " << e.what() << '\n';
        return kThreshold;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << " (raise --" << e.cap_name() << ")\n";
        return kCapacity;
    } catch (const Mismatch& e) {
        err << "mismatch: " << e.what() << '\n';
        return kMismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace ustr::cli
