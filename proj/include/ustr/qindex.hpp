#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "ustr/indexed_text.hpp"
#include "ustr/rmq.hpp"

namespace ustr {

struct IndexConfig {
    /// Longest pattern answered from the per-length tables; default max(1, floor(log2 N)).
    std::optional<std::size_t> short_cutoff;
    /// Longest pattern with a block-maxima table; default the longest factor.
    std::optional<std::size_t> long_limit;
    FactorizeOptions factorize;
    Execution execution = Execution::parallel;
};

/// Per-query instrumentation; never shared between calls.
struct QueryStats {
    std::size_t rmq_calls = 0;
    std::size_t block_scans = 0;
    std::size_t outputs = 0;
    std::size_t elements_scanned = 0;
    std::size_t search_steps = 0;

    std::size_t work() const noexcept { return search_steps + rmq_calls + block_scans + elements_scanned; }
};

struct Hit {
    std::size_t position;  // 1-based
    Prob prob;
};

enum class QueryPath { short_table, long_table, scan };

/// Threshold substring search over one uncertain string.
class SubstringIndex {
public:
    SubstringIndex() = default;

    static SubstringIndex build(const UncertainString& u, Prob tau_min, const IndexConfig& config = {});
    static SubstringIndex build(std::shared_ptr<const IndexedText> text, const IndexConfig& config = {});

    /// Positions where `p` occurs with probability >= tau, ascending.
    /// Throws ThresholdError when tau < tau_min.
    std::vector<std::size_t> query(std::string_view p, Prob tau) const;
    std::vector<std::size_t> query(std::string_view p, Prob tau, QueryStats& stats) const;
    /// Same answer with the occurrence probability of each position.
    std::vector<Hit> query_hits(std::string_view p, Prob tau, QueryStats* stats = nullptr) const;

    QueryPath path_for(std::size_t pattern_length) const noexcept;

    Prob tau_min() const noexcept { return text_->tt.tau_min(); }
    std::size_t short_cutoff() const noexcept { return m_short_; }
    std::size_t long_limit() const noexcept { return l_max_; }
    const IndexedText& text() const noexcept { return *text_; }
    std::shared_ptr<const IndexedText> shared_text() const noexcept { return text_; }

    /// C_i (1 <= i <= short_cutoff) and PB_i (short_cutoff < i <= long_limit).
    const RangeMaxIndex& short_table(std::size_t i) const { return short_.at(i - 1); }
    const RangeMaxIndex& long_table(std::size_t i) const { return long_.at(i - m_short_ - 1); }

    /// Bytes held by the tables, excluding the shared text.
    std::size_t table_bytes() const noexcept;

    template <class Archive>
    void save(Archive& ar) const {
        ar(std::const_pointer_cast<IndexedText>(text_), m_short_, l_max_, short_, long_);
    }
    template <class Archive>
    void load(Archive& ar) {
        std::shared_ptr<IndexedText> text;
        ar(text, m_short_, l_max_, short_, long_);
        text_ = std::move(text);
    }

private:
    std::shared_ptr<const IndexedText> text_;
    std::size_t m_short_ = 1;
    std::size_t l_max_ = 0;
    std::vector<RangeMaxIndex> short_;
    std::vector<RangeMaxIndex> long_;
};

/// Slot keys for deduplication: the global source position of each suffix.
std::vector<std::uint32_t> position_keys(const IndexedText& text);

void check_threshold(Prob tau, Prob tau_min);

}  // namespace ustr
