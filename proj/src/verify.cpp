#include "ustr/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ustr/factorize.hpp"
#include "ustr/oracle.hpp"

namespace ustr::verify {

namespace {

constexpr std::string_view kLetters = "ACGT";

std::string join(const std::vector<std::size_t>& v) {
    std::ostringstream out;
    out << '{';
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
    out << '}';
    return out.str();
}

std::vector<std::size_t> threshold(const std::vector<Prob>& profile, Prob tau) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < profile.size(); ++k) {
        if (meets(profile[k], tau)) out.push_back(k + 1);
    }
    return out;
}

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string sample_world(const UncertainString& u, Rng& rng) {
    std::string w;
    for (const auto& pd : u.positions()) {
        double r = rng.unit();
        Symbol pick = pd.entries().back().symbol;
        for (const auto& a : pd.entries()) {
            if (r < a.prob) {
                pick = a.symbol;
                break;
            }
            r -= a.prob;
        }
        w.push_back(pick);
    }
    return w;
}

}  // namespace

Instance random_instance(std::uint64_t seed, const SuiteConfig& cfg) {
    Rng rng(seed);
    const std::size_t n = cfg.min_n + rng.below(cfg.max_n - cfg.min_n + 1);
    const std::size_t sigma = 2 + rng.below(std::max<std::size_t>(1, std::min(cfg.max_alphabet, kLetters.size()) - 1));
    const double theta = cfg.thetas[rng.below(cfg.thetas.size())];
    const Prob tau_min = cfg.tau_mins[rng.below(cfg.tau_mins.size())];
    const bool correlated = rng.chance(cfg.correlated_fraction);

    GenConfig g;
    g.theta = theta;
    g.choices = std::min<std::size_t>(5, sigma);
    g.alphabet = std::string(kLetters.substr(0, sigma));
    g.seed = rng.next();
    g.correlations = correlated ? 1 + rng.below(3) : 0;
    const std::string corpus = random_corpus(n, g.alphabet, rng.next());
    UncertainString u = generate(corpus, g, "s" + std::to_string(seed));
    const bool has = !u.correlations().empty();
    return {std::move(u), tau_min, has};
}

DocumentCollection random_collection(std::uint64_t seed, std::size_t max_docs, std::size_t max_total,
                                     const SuiteConfig& cfg) {
    Rng rng(seed);
    const std::size_t docs = 1 + rng.below(max_docs);
    const std::size_t sigma = 2 + rng.below(std::max<std::size_t>(1, std::min(cfg.max_alphabet, kLetters.size()) - 1));
    const std::string alphabet(kLetters.substr(0, sigma));
    DocumentCollection out;
    const std::size_t share = std::max<std::size_t>(1, max_total / docs);
    for (std::size_t d = 0; d < docs; ++d) {
        const std::size_t n = 1 + rng.below(share);
        GenConfig g;
        g.theta = cfg.thetas[rng.below(cfg.thetas.size())];
        g.choices = sigma;
        g.alphabet = alphabet;
        g.seed = rng.next();
        g.correlations = rng.chance(cfg.correlated_fraction) ? 1 : 0;
        out.push_back(generate(random_corpus(n, alphabet, rng.next()), g, "d" + std::to_string(d + 1)));
    }
    return out;
}

std::vector<std::string> probe_patterns(const DocumentCollection& docs, Prob tau_min, std::uint64_t seed,
                                        const SuiteConfig& cfg) {
    std::set<std::string> found;
    std::set<char> letters;
    for (const auto& u : docs) {
        for (std::size_t i = 1; i <= u.size(); ++i) {
            for (const auto& w : aligned_strings(u, i, tau_min, cfg.max_pattern)) found.insert(w.text);
            for (const auto& a : u.at(i).entries()) letters.insert(a.symbol);
        }
    }
    Rng rng(seed);
    for (std::size_t s = 0; s < cfg.world_samples; ++s) {
        for (const auto& u : docs) {
            const std::string w = sample_world(u, rng);
            for (std::size_t i = 0; i < w.size(); ++i) {
                for (std::size_t len = 1; len <= cfg.max_pattern && i + len <= w.size(); ++len) {
                    found.insert(w.substr(i, len));
                }
            }
        }
    }

    auto absent = [&](const std::string& p) {
        for (const auto& u : docs) {
            for (Prob q : oracle::profile(u, p)) {
                if (q > 0.0) return false;
            }
        }
        return true;
    };
    std::string pool(letters.begin(), letters.end());
    std::size_t added = 0;
    for (std::size_t attempt = 0; attempt < 200 * cfg.absent_patterns && added < cfg.absent_patterns; ++attempt) {
        // late attempts mix in a letter outside the alphabet
        const bool foreign = attempt >= 100 * cfg.absent_patterns;
        const std::size_t len = 1 + rng.below(cfg.max_pattern);
        std::string p;
        for (std::size_t k = 0; k < len; ++k) p.push_back(pool[rng.below(pool.size())]);
        if (foreign) p[rng.below(len)] = 'Z';
        if (found.count(p) == 0 && absent(p)) {
            found.insert(p);
            ++added;
        }
    }
    return {found.begin(), found.end()};
}

std::vector<Prob> tau_grid(Prob tau_min) {
    std::vector<Prob> out;
    for (std::size_t k = 1; static_cast<double>(k) * tau_min <= 1.0 + 1e-12; ++k) {
        out.push_back(static_cast<double>(k) * tau_min);
    }
    return out;
}

std::optional<std::string> check_substring(const UncertainString& u, const SubstringIndex& idx,
                                           const std::vector<std::string>& patterns, std::size_t* checked) {
    const auto grid = tau_grid(idx.tau_min());
    for (const auto& p : patterns) {
        const auto profile = oracle::profile(u, p);
        for (Prob tau : grid) {
            QueryStats stats;
            const auto got = idx.query(p, tau, stats);
            const auto want = threshold(profile, tau);
            if (checked) ++*checked;
            if (got != want) {
                return "substring '" + p + "' tau " + std::to_string(tau) + ": index " + join(got) + ", oracle " +
                       join(want);
            }
            if (idx.path_for(p.size()) == QueryPath::short_table && stats.rmq_calls > 2 * stats.outputs + 1) {
                return "substring '" + p + "': " + std::to_string(stats.rmq_calls) + " rmq calls for " +
                       std::to_string(stats.outputs) + " outputs";
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_listing(const DocumentCollection& docs, const ListingIndex& idx,
                                         const std::vector<std::string>& patterns, std::size_t* checked) {
    const auto grid = tau_grid(idx.tau_min());
    for (const auto& p : patterns) {
        for (Prob tau : grid) {
            QueryStats stats;
            const auto got = idx.list(p, tau, &stats);
            const auto want = oracle::list(docs, p, tau, idx.metric(), idx.tau_min());
            if (checked) ++*checked;
            if (got != want) {
                return "listing '" + p + "' tau " + std::to_string(tau) + " metric " +
                       std::string(metric_name(idx.metric())) + ": index " + join(got) + ", oracle " + join(want);
            }
            if (idx.metric() == Metric::maximum && p.size() <= idx.short_cutoff() &&
                stats.rmq_calls > 2 * stats.outputs + 1) {
                return "listing '" + p + "': " + std::to_string(stats.rmq_calls) + " rmq calls for " +
                       std::to_string(stats.outputs) + " outputs";
            }
        }
    }
    return std::nullopt;
}

ApproxReport check_approx(const UncertainString& u, const LinkIndex& idx, const std::vector<std::string>& patterns) {
    ApproxReport report;
    const Prob eps = idx.epsilon();
    const auto grid = tau_grid(idx.tau_min());

    std::map<std::uint32_t, std::vector<const Link*>> chains;
    for (const Link& l : idx.links()) {
        report.max_spread = std::max(report.max_spread, l.stored_prob - l.low_prob);
        if (l.stored_prob - l.low_prob > eps + 1e-12) {
            report.failure = "link piece at position " + std::to_string(l.pos_id) + " spreads " +
                             std::to_string(l.stored_prob - l.low_prob) + " > epsilon";
            return report;
        }
        chains[l.chain].push_back(&l);
    }
    for (auto& [id, pieces] : chains) {
        std::sort(pieces.begin(), pieces.end(),
                  [](const Link* a, const Link* b) { return a->origin_depth > b->origin_depth; });
        for (std::size_t k = 1; k < pieces.size(); ++k) {
            const Link& below = *pieces[k - 1];
            const Link& above = *pieces[k];
            const Prob step = std::abs(above.stored_prob - below.stored_prob);
            ++report.adjacent_pairs;
            report.max_adjacent_step = std::max(report.max_adjacent_step, step);
            if (above.low_prob - below.stored_prob > eps + 1e-12) {
                ++report.forced_steps;
            } else {
                report.max_unforced_step = std::max(report.max_unforced_step, step);
            }
        }
    }

    for (const auto& p : patterns) {
        const auto profile = oracle::profile(u, p);
        std::map<std::size_t, std::size_t> carried;
        for (const Link& l : idx.stabbed(p)) ++carried[l.pos_id];
        for (std::size_t i = 1; i <= profile.size(); ++i) {
            const std::size_t c = carried.count(i) ? carried[i] : 0;
            if (meets(profile[i - 1], idx.tau_min()) && c != 1) {
                report.failure = "approx '" + p + "': position " + std::to_string(i) + " carried by " +
                                 std::to_string(c) + " stabbed links";
                return report;
            }
        }
        for (const auto& [d, c] : carried) {
            if (c > 1) {
                report.failure = "approx '" + p + "': position " + std::to_string(d) + " stabbed twice";
                return report;
            }
        }
        for (Prob tau : grid) {
            const auto got = idx.query(p, tau);
            const auto exact = threshold(profile, tau);
            const auto loose = threshold(profile, tau - eps);
            ++report.checked;
            const bool ok = eps <= 1e-9 ? got == exact : subset(exact, got) && subset(got, loose);
            if (!ok) {
                report.failure = "approx '" + p + "' tau " + std::to_string(tau) + " eps " + std::to_string(eps) +
                                 ": approx " + join(got) + ", exact " + join(exact) + ", exact(tau-eps) " +
                                 join(loose);
                return report;
            }
        }
    }
    return report;
}

SuiteReport run_suite(std::size_t count, std::uint64_t seed, const SuiteConfig& cfg, const std::vector<Prob>& epsilons,
                      const IndexConfig& index_config) {
    SuiteReport report;
    for (std::size_t s = 0; s < count; ++s) {
        const std::uint64_t inst_seed = seed * 1000003ULL + s;
        const Instance inst = random_instance(inst_seed, cfg);
        const auto idx = SubstringIndex::build(inst.u, inst.tau_min, index_config);
        const auto patterns = probe_patterns({inst.u}, inst.tau_min, inst_seed ^ 0x9e3779b97f4a7c15ULL, cfg);
        ++report.instances;
        const std::string where = "instance seed " + std::to_string(inst_seed) + " (n=" +
                                  std::to_string(inst.u.size()) + ", tau_min=" + std::to_string(inst.tau_min) + "): ";
        if (auto f = check_substring(inst.u, idx, patterns, &report.queries)) {
            report.failure = where + *f;
            return report;
        }
        if (inst.u.size() <= 40) {
            if (auto f = conservation_check(inst.u, inst.tau_min, idx.text().tt)) {
                report.failure = where + "conservation: '" + f->pattern + "' at " + std::to_string(f->position) +
                                 ": " + f->reason;
                return report;
            }
        }
        for (Prob eps : epsilons) {
            const auto link = LinkIndex::build(idx.shared_text(), eps, index_config.execution);
            const auto r = check_approx(inst.u, link, patterns);
            report.queries += r.checked;
            if (r.failure) {
                report.failure = where + *r.failure;
                return report;
            }
        }
    }
    return report;
}

}  // namespace ustr::verify
