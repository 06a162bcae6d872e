#include "ustr/listing.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

#include "ustr/errors.hpp"
#include "ustr/kernels.hpp"

namespace ustr {

std::string_view metric_name(Metric m) noexcept {
    switch (m) {
        case Metric::maximum: return "max";
        case Metric::or_formula: return "or";
        case Metric::or_independent: return "orx";
    }
    return "max";
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
    if (name == "max") return Metric::maximum;
    if (name == "or") return Metric::or_formula;
    if (name == "orx") return Metric::or_independent;
    return std::nullopt;
}

void RelevanceAccumulator::add(Prob p) noexcept {
    ++count_;
    max_ = std::max(max_, p);
    sum_ += p;
    product_ *= p;
    miss_ *= 1.0 - p;
}

Prob RelevanceAccumulator::value(Metric m) const noexcept {
    if (count_ == 0) return 0.0;
    switch (m) {
        case Metric::maximum: return max_;
        case Metric::or_formula: return count_ == 1 ? sum_ : sum_ - product_;
        case Metric::or_independent: return 1.0 - miss_;
    }
    return 0.0;
}

Prob relevance(const UncertainString& d, std::string_view p, Metric metric, Prob floor) {
    RelevanceAccumulator acc;
    if (p.empty() || p.size() > d.size()) return 0.0;
    for (std::size_t i = 1; i + p.size() <= d.size() + 1; ++i) {
        const Prob prob = occurrence_probability(d, p, i);
        if (prob > 0.0 && (floor <= 0.0 || meets(prob, floor))) acc.add(prob);
    }
    return acc.value(metric);
}

namespace kernels {

std::vector<Prob> relevance_entries(const IndexedText& text, std::size_t len, Metric metric, Execution exec) {
    const auto sa = text.sa.sa();
    const Prob tau_min = text.tt.tau_min();
    std::vector<Prob> out(sa.size(), 0.0);
    const auto groups = depth_groups(text, len);
    const std::size_t key_count = text.tt.total_positions() + 1;
    const std::size_t docs = std::max<std::size_t>(1, text.tt.doc_count());
    const long long count = static_cast<long long>(groups.size());

    struct Scratch {
        std::vector<std::uint32_t> key_stamp;
        std::vector<std::uint32_t> doc_stamp;
        std::vector<std::uint32_t> doc_slot;
        std::vector<RelevanceAccumulator> doc_acc;
        std::vector<std::uint32_t> touched;

        Scratch(std::size_t keys, std::size_t docs)
            : key_stamp(keys, 0), doc_stamp(docs, 0), doc_slot(docs, 0), doc_acc(docs) {}
    };
    auto sweep = [&](Scratch& s, long long g) {
        const auto mark = static_cast<std::uint32_t>(g + 1);
        s.touched.clear();
        for (std::size_t k = groups[g].begin; k < groups[g].end; ++k) {
            const std::size_t off = sa[k];
            const Prob prob = text.tt.window_probability(off, len);
            if (!meets(prob, tau_min)) continue;
            std::uint32_t& ks = s.key_stamp[text.tt.global_position(off)];
            if (ks == mark) continue;
            ks = mark;
            const std::uint32_t d = text.tt.doc_of(off);
            if (s.doc_stamp[d] != mark) {
                s.doc_stamp[d] = mark;
                s.doc_slot[d] = static_cast<std::uint32_t>(k);
                s.doc_acc[d] = RelevanceAccumulator{};
                s.touched.push_back(d);
            }
            s.doc_acc[d].add(prob);
        }
        for (std::uint32_t d : s.touched) out[s.doc_slot[d]] = s.doc_acc[d].value(metric);
    };

    if (exec == Execution::parallel) {
#pragma omp parallel
        {
            Scratch s(key_count, docs);
#pragma omp for schedule(dynamic, 256)
            for (long long g = 0; g < count; ++g) sweep(s, g);
        }
    } else {
        Scratch s(key_count, docs);
        for (long long g = 0; g < count; ++g) sweep(s, g);
    }
    return out;
}

}  // namespace kernels

ListingIndex ListingIndex::build(const DocumentCollection& docs, Prob tau_min, Metric metric,
                                 const IndexConfig& config) {
    FactorizeOptions fo = config.factorize;
    fo.execution = config.execution;
    ListingIndex idx;
    idx.text_ = IndexedText::build(transform_collection(docs, tau_min, fo));
    idx.metric_ = metric;
    for (const auto& d : docs) idx.names_.push_back(d.name());

    const IndexedText& t = *idx.text_;
    const std::size_t n = t.sa.size();
    const std::size_t log_n = n < 2 ? 1 : static_cast<std::size_t>(std::bit_width(n)) - 1;
    idx.m_short_ = std::max<std::size_t>(1, config.short_cutoff.value_or(log_n));
    const std::size_t short_count = std::min(idx.m_short_, t.tt.max_factor_length());
    for (std::size_t i = 1; i <= short_count; ++i) {
        idx.short_.emplace_back(kernels::relevance_entries(t, i, metric, config.execution));
    }
    return idx;
}

std::vector<std::size_t> ListingIndex::list(std::string_view p, Prob tau, QueryStats* stats) const {
    std::vector<std::size_t> out;
    for (const DocHit& h : list_hits(p, tau, stats)) out.push_back(h.doc);
    return out;
}

std::vector<DocHit> ListingIndex::list_hits(std::string_view p, Prob tau, QueryStats* stats_out) const {
    check_threshold(tau, tau_min());
    QueryStats stats;
    std::vector<DocHit> hits;
    const IndexedText& t = *text_;
    const auto code = encode_pattern(p);
    const std::size_t m = p.size();
    std::optional<SuffixRange> range;
    if (code && m > 0) range = t.sa.suffix_range(*code, &stats.search_steps);

    if (range && m <= short_.size()) {
        const RangeMaxIndex& table = short_[m - 1];
        const auto sa = t.sa.sa();
        std::vector<SuffixRange> todo{*range};
        while (!todo.empty()) {
            const SuffixRange r = todo.back();
            todo.pop_back();
            const std::size_t k = table.argmax(r.sp, r.ep);
            ++stats.rmq_calls;
            if (!meets(table.value(k), tau)) continue;
            hits.push_back({t.tt.doc_of(sa[k]), table.value(k)});
            if (k > r.sp) todo.push_back({r.sp, k - 1});
            if (k < r.ep) todo.push_back({k + 1, r.ep});
        }
    } else if (range) {
        const auto sa = t.sa.sa();
        std::unordered_set<std::uint64_t> seen;
        std::unordered_map<std::uint32_t, RelevanceAccumulator> per_doc;
        for (std::size_t k = range->sp; k <= range->ep; ++k) {
            ++stats.elements_scanned;
            const std::size_t off = sa[k];
            const Prob prob = t.tt.window_probability(off, m);
            if (!meets(prob, tau_min())) continue;
            if (!seen.insert(t.tt.global_position(off)).second) continue;
            per_doc[t.tt.doc_of(off)].add(prob);
        }
        for (const auto& [d, acc] : per_doc) {
            const Prob rel = acc.value(metric_);
            if (meets(rel, tau)) hits.push_back({d, rel});
        }
    }

    std::sort(hits.begin(), hits.end(), [](const DocHit& a, const DocHit& b) { return a.doc < b.doc; });
    stats.outputs = hits.size();
    if (stats_out != nullptr) *stats_out = stats;
    return hits;
}

std::size_t ListingIndex::table_bytes() const noexcept {
    std::size_t bytes = 0;
    for (const auto& r : short_) bytes += r.memory_bytes();
    return bytes;
}

}  // namespace ustr
