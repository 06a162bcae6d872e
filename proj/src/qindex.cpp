#include "ustr/qindex.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ustr/errors.hpp"
#include "ustr/kernels.hpp"

namespace ustr {

void check_threshold(Prob tau, Prob tau_min) {
    if (!meets(tau, tau_min)) {
        throw ThresholdError("threshold " + std::to_string(tau) + " is below the index construction threshold " +
                             std::to_string(tau_min));
    }
}

std::vector<std::uint32_t> position_keys(const IndexedText& text) {
    const auto sa = text.sa.sa();
    std::vector<std::uint32_t> keys(sa.size());
    for (std::size_t k = 0; k < sa.size(); ++k) keys[k] = static_cast<std::uint32_t>(text.tt.global_position(sa[k]));
    return keys;
}

SubstringIndex SubstringIndex::build(const UncertainString& u, Prob tau_min, const IndexConfig& config) {
    FactorizeOptions fo = config.factorize;
    fo.execution = config.execution;
    return build(IndexedText::build(transform(u, tau_min, fo)), config);
}

SubstringIndex SubstringIndex::build(std::shared_ptr<const IndexedText> text, const IndexConfig& config) {
    SubstringIndex idx;
    idx.text_ = std::move(text);
    const IndexedText& t = *idx.text_;
    const std::size_t n = t.sa.size();
    const std::size_t log_n = n < 2 ? 1 : static_cast<std::size_t>(std::bit_width(n)) - 1;
    idx.m_short_ = std::max<std::size_t>(1, config.short_cutoff.value_or(log_n));
    idx.l_max_ = config.long_limit.value_or(t.tt.max_factor_length());

    const std::size_t short_count = std::min(idx.m_short_, t.tt.max_factor_length());
    if (short_count > 0) {
        const auto keys = position_keys(t);
        const std::size_t key_count = t.tt.total_positions() + 1;
        for (std::size_t i = 1; i <= short_count; ++i) {
            auto values = kernels::prefix_probabilities(t, i, config.execution);
            const auto groups = kernels::depth_groups(t, i);
            kernels::keep_leftmost(values, groups, keys, key_count, config.execution);
            idx.short_.emplace_back(std::move(values));
        }
    }
    if (idx.l_max_ > idx.m_short_) {
        for (auto& row : kernels::block_maxima(t, idx.m_short_ + 1, idx.l_max_, config.execution)) {
            idx.long_.emplace_back(std::move(row));
        }
    }
    return idx;
}

QueryPath SubstringIndex::path_for(std::size_t m) const noexcept {
    if (m <= short_.size()) return QueryPath::short_table;
    if (m > m_short_ && m <= l_max_) return QueryPath::long_table;
    return QueryPath::scan;
}

std::vector<std::size_t> SubstringIndex::query(std::string_view p, Prob tau) const {
    QueryStats stats;
    return query(p, tau, stats);
}

std::vector<std::size_t> SubstringIndex::query(std::string_view p, Prob tau, QueryStats& stats) const {
    std::vector<std::size_t> out;
    for (const Hit& h : query_hits(p, tau, &stats)) out.push_back(h.position);
    return out;
}

std::vector<Hit> SubstringIndex::query_hits(std::string_view p, Prob tau, QueryStats* stats_out) const {
    check_threshold(tau, tau_min());
    QueryStats stats;
    std::vector<Hit> hits;
    const IndexedText& t = *text_;
    const auto code = encode_pattern(p);
    const std::size_t m = p.size();
    std::optional<SuffixRange> range;
    if (code && m > 0) range = t.sa.suffix_range(*code, &stats.search_steps);

    if (range) {
        const auto sa = t.sa.sa();
        const auto pos = t.tt.pos();
        switch (path_for(m)) {
            case QueryPath::short_table: {
                const RangeMaxIndex& table = short_[m - 1];
                std::vector<SuffixRange> todo{*range};
                while (!todo.empty()) {
                    const SuffixRange r = todo.back();
                    todo.pop_back();
                    const std::size_t k = table.argmax(r.sp, r.ep);
                    ++stats.rmq_calls;
                    if (!meets(table.value(k), tau)) continue;
                    hits.push_back({pos[sa[k]], table.value(k)});
                    if (k > r.sp) todo.push_back({r.sp, k - 1});
                    if (k < r.ep) todo.push_back({k + 1, r.ep});
                }
                break;
            }
            case QueryPath::long_table: {
                const RangeMaxIndex& table = long_[m - m_short_ - 1];
                std::vector<SuffixRange> todo{{range->sp / m, range->ep / m}};
                while (!todo.empty()) {
                    const SuffixRange r = todo.back();
                    todo.pop_back();
                    const std::size_t b = table.argmax(r.sp, r.ep);
                    ++stats.rmq_calls;
                    if (!meets(table.value(b), tau)) continue;
                    ++stats.block_scans;
                    const std::size_t lo = std::max(range->sp, b * m);
                    const std::size_t hi = std::min(range->ep, b * m + m - 1);
                    for (std::size_t k = lo; k <= hi; ++k) {
                        ++stats.elements_scanned;
                        const Prob prob = t.tt.window_probability(sa[k], m);
                        if (meets(prob, tau)) hits.push_back({pos[sa[k]], prob});
                    }
                    if (b > r.sp) todo.push_back({r.sp, b - 1});
                    if (b < r.ep) todo.push_back({b + 1, r.ep});
                }
                break;
            }
            case QueryPath::scan:
                for (std::size_t k = range->sp; k <= range->ep; ++k) {
                    ++stats.elements_scanned;
                    const Prob prob = t.tt.window_probability(sa[k], m);
                    if (meets(prob, tau)) hits.push_back({pos[sa[k]], prob});
                }
                break;
        }
    }

    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.position < b.position; });
    hits.erase(std::unique(hits.begin(), hits.end(),
                           [](const Hit& a, const Hit& b) { return a.position == b.position; }),
               hits.end());
    stats.outputs = hits.size();
    if (stats_out != nullptr) *stats_out = stats;
    return hits;
}

std::size_t SubstringIndex::table_bytes() const noexcept {
    std::size_t bytes = 0;
    for (const auto& r : short_) bytes += r.memory_bytes();
    for (const auto& r : long_) bytes += r.memory_bytes();
    return bytes;
}

}  // namespace ustr
