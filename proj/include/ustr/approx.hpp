#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "ustr/indexed_text.hpp"
#include "ustr/qindex.hpp"

namespace ustr {

/// Link from a node marked d to its lowest proper ancestor marked d (the
/// root counts as marked by every position). Node ids are preorder ranks.
struct RawLink {
    std::uint32_t origin;
    std::uint32_t target;
    std::uint32_t pos_id;   // global 1-based source position
    std::uint32_t witness;  // t offset of a suffix below origin that maps to pos_id
};

/// One ε-bounded piece of a raw link. It covers the string depths
/// (target_depth, origin_depth] on the root path of the raw link's origin;
/// both ends are points given as (base node, depth), where the base node is
/// the shallowest node at or below the point.
struct Link {
    std::uint32_t origin_pre;
    std::uint32_t origin_depth;
    std::uint32_t target_pre;
    std::uint32_t target_depth;
    std::uint32_t pos_id;
    std::uint32_t chain;  // index of the raw link it came from
    Prob stored_prob;     // largest prefix probability inside the piece
    Prob low_prob;        // smallest prefix probability inside the piece

    template <class Archive>
    void serialize(Archive& ar) {
        ar(origin_pre, origin_depth, target_pre, target_depth, pos_id, chain, stored_prob, low_prob);
    }
};

/// Raw links for every marked node, ordered by (pos_id, origin).
std::vector<RawLink> build_links(const IndexedText& text, Execution exec = Execution::parallel);

/// Splits each raw link walking one symbol at a time from origin to target,
/// cutting before the spread of prefix probabilities would exceed epsilon, or
/// before the stored_prob step from the piece below would grow past epsilon.
/// A single symbol that drops the prefix probability by more than epsilon
/// still forces a larger step. Result sorted by (origin_pre, origin_depth, pos_id).
std::vector<Link> partition_links(const IndexedText& text, const std::vector<RawLink>& raw, Prob epsilon,
                                  Execution exec = Execution::parallel);

/// ε-approximate threshold search: reports every position with probability
/// >= tau and none below tau - epsilon.
class LinkIndex {
public:
    LinkIndex() = default;

    static LinkIndex build(std::shared_ptr<const IndexedText> text, Prob epsilon,
                           Execution exec = Execution::parallel);
    static LinkIndex build(const UncertainString& u, Prob tau_min, Prob epsilon, const IndexConfig& config = {});

    std::vector<std::size_t> query(std::string_view p, Prob tau, QueryStats* stats = nullptr) const;
    std::vector<Hit> query_hits(std::string_view p, Prob tau, QueryStats* stats = nullptr) const;
    /// Every piece stabbed by the locus of `p`, whatever its probability.
    std::vector<Link> stabbed(std::string_view p, QueryStats* stats = nullptr) const;

    Prob epsilon() const noexcept { return epsilon_; }
    Prob tau_min() const noexcept { return text_->tt.tau_min(); }
    std::size_t raw_link_count() const noexcept { return raw_count_; }
    const std::vector<Link>& links() const noexcept { return links_; }
    const IndexedText& text() const noexcept { return *text_; }
    std::size_t table_bytes() const noexcept { return links_.size() * sizeof(Link); }

    template <class Archive>
    void save(Archive& ar) const {
        ar(std::const_pointer_cast<IndexedText>(text_), epsilon_, raw_count_, links_);
    }
    template <class Archive>
    void load(Archive& ar) {
        std::shared_ptr<IndexedText> text;
        ar(text, epsilon_, raw_count_, links_);
        text_ = std::move(text);
    }

private:
    std::shared_ptr<const IndexedText> text_;
    Prob epsilon_ = 1.0;
    std::size_t raw_count_ = 0;
    std::vector<Link> links_;
};

}  // namespace ustr
