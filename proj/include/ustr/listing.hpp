#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ustr/indexed_text.hpp"
#include "ustr/qindex.hpp"
#include "ustr/rmq.hpp"

namespace ustr {

/// Document relevance for a pattern.
///   maximum:        best occurrence probability
///   or_formula:     sum minus product of the occurrence probabilities
///                   (a single occurrence scores its own probability)
///   or_independent: 1 - prod(1 - p), OR of independent events
enum class Metric { maximum, or_formula, or_independent };

/// "max", "or", "orx".
std::string_view metric_name(Metric m) noexcept;
std::optional<Metric> parse_metric(std::string_view name) noexcept;

/// Running relevance over a stream of occurrence probabilities.
class RelevanceAccumulator {
public:
    void add(Prob p) noexcept;
    Prob value(Metric m) const noexcept;
    std::size_t count() const noexcept { return count_; }

private:
    std::size_t count_ = 0;
    Prob max_ = 0.0;
    Prob sum_ = 0.0;
    Prob product_ = 1.0;
    Prob miss_ = 1.0;  // prod(1 - p)
};

/// Relevance of `d` for `p` over the occurrences with probability >= floor
/// (floor 0: every occurrence with nonzero probability).
Prob relevance(const UncertainString& d, std::string_view p, Metric metric, Prob floor = 0.0);

struct DocHit {
    std::size_t doc;  // 0-based
    Prob relevance;
};

/// Document listing over a collection: per depth-i group, one relevance
/// entry per document at its leftmost slot, with RMQ over the entries.
class ListingIndex {
public:
    ListingIndex() = default;

    static ListingIndex build(const DocumentCollection& docs, Prob tau_min, Metric metric,
                              const IndexConfig& config = {});

    /// Documents whose relevance over occurrences >= tau_min reaches tau, ascending.
    std::vector<std::size_t> list(std::string_view p, Prob tau, QueryStats* stats = nullptr) const;
    std::vector<DocHit> list_hits(std::string_view p, Prob tau, QueryStats* stats = nullptr) const;

    Metric metric() const noexcept { return metric_; }
    Prob tau_min() const noexcept { return text_->tt.tau_min(); }
    std::size_t doc_count() const noexcept { return names_.size(); }
    const std::string& doc_name(std::size_t d) const { return names_.at(d); }
    std::size_t short_cutoff() const noexcept { return m_short_; }
    const IndexedText& text() const noexcept { return *text_; }
    const RangeMaxIndex& relevance_table(std::size_t i) const { return short_.at(i - 1); }
    std::size_t table_bytes() const noexcept;

    template <class Archive>
    void save(Archive& ar) const {
        ar(std::const_pointer_cast<IndexedText>(text_), metric_, names_, m_short_, short_);
    }
    template <class Archive>
    void load(Archive& ar) {
        std::shared_ptr<IndexedText> text;
        ar(text, metric_, names_, m_short_, short_);
        text_ = std::move(text);
    }

private:
    std::shared_ptr<const IndexedText> text_;
    Metric metric_ = Metric::maximum;
    std::vector<std::string> names_;
    std::size_t m_short_ = 1;
    std::vector<RangeMaxIndex> short_;
};

namespace kernels {

/// R_len: for each depth-len group and document, the relevance over the
/// group's occurrences (prob >= tau_min, one per source position) stored at
/// the document's leftmost qualifying slot; 0 elsewhere.
std::vector<Prob> relevance_entries(const IndexedText& text, std::size_t len, Metric metric, Execution exec);

}  // namespace kernels

}  // namespace ustr
