#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ustr/model.hpp"

namespace ustr {

/// Text alphabet. Separators take codes below kSymbolCodeBase, each
/// occurrence its own code, so they sort below every symbol and no two
/// suffixes share a separator-crossing prefix.
using Code = std::uint32_t;

inline constexpr Code kSymbolCodeBase = 0x80000000u;

constexpr Code symbol_code(Symbol c) noexcept { return kSymbolCodeBase + static_cast<unsigned char>(c); }
constexpr bool is_separator(Code c) noexcept { return c < kSymbolCodeBase; }
constexpr Symbol code_symbol(Code c) noexcept {
    return is_separator(c) ? kSeparatorSymbol : static_cast<Symbol>(c - kSymbolCodeBase);
}

/// Encodes `s`; every '$' becomes a fresh separator code (0, 1, 2, ...).
std::vector<Code> encode_text(std::string_view s);

/// Encodes a query pattern. nullopt when it holds a separator or an invalid symbol.
std::optional<std::vector<Code>> encode_pattern(std::string_view p);

/// Separators decode to '$'.
std::string decode_text(std::span<const Code> codes);

struct SuffixRange {
    std::size_t sp;  // first suffix-array slot, 0-based
    std::size_t ep;  // last slot, inclusive

    std::size_t size() const noexcept { return ep - sp + 1; }
    friend bool operator==(const SuffixRange&, const SuffixRange&) = default;
};

/// Suffix array, inverse and LCP over a code sequence (prefix doubling
/// with counting sort, Kasai LCP). Slots and text offsets are 0-based.
class SuffixArrayIndex {
public:
    SuffixArrayIndex() = default;
    explicit SuffixArrayIndex(std::vector<Code> text);

    std::size_t size() const noexcept { return text_.size(); }
    std::span<const Code> text() const noexcept { return text_; }
    std::span<const std::uint32_t> sa() const noexcept { return sa_; }
    std::span<const std::uint32_t> inverse() const noexcept { return isa_; }
    /// lcp()[k] = LCP(suffix sa[k-1], suffix sa[k]); lcp()[0] = 0.
    std::span<const std::uint32_t> lcp() const noexcept { return lcp_; }

    /// Number of symbols from `offset` up to (excluding) the next separator.
    std::size_t real_length(std::size_t offset) const noexcept { return run_[offset]; }

    /// Maximal slot range whose suffixes start with `pattern`; nullopt when absent.
    /// `steps`, if given, is incremented once per suffix comparison.
    std::optional<SuffixRange> suffix_range(std::span<const Code> pattern, std::size_t* steps = nullptr) const;

    std::size_t memory_bytes() const noexcept;

    template <class Archive>
    void save(Archive& ar) const { ar(text_, sa_, lcp_); }
    template <class Archive>
    void load(Archive& ar) {
        ar(text_, sa_, lcp_);
        finish();
    }

private:
    int compare(std::uint32_t offset, std::span<const Code> pattern) const noexcept;
    void finish();  // inverse and run lengths from text_ and sa_

    std::vector<Code> text_;
    std::vector<std::uint32_t> sa_;
    std::vector<std::uint32_t> isa_;
    std::vector<std::uint32_t> lcp_;
    std::vector<std::uint32_t> run_;
};

/// Suffix-tree view over a suffix array: the LCP-interval tree with a leaf
/// per slot. Node ids are preorder ranks, so a subtree is the id interval
/// [v, subtree_last(v)] and nodes are ordered by (sp ascending, ep descending).
class TreeView {
public:
    using Node = std::uint32_t;
    static constexpr Node kNone = ~Node{0};

    TreeView() = default;
    explicit TreeView(const SuffixArrayIndex& index);

    std::size_t node_count() const noexcept { return parent_.size(); }
    bool empty() const noexcept { return parent_.empty(); }
    static constexpr Node root() noexcept { return 0; }

    Node parent(Node v) const { return parent_[v]; }
    std::size_t sp(Node v) const { return sp_[v]; }
    std::size_t ep(Node v) const { return ep_[v]; }
    /// String depth. Leaves count their terminating separator.
    std::size_t depth(Node v) const { return depth_[v]; }
    bool is_leaf(Node v) const { return leaf_[sp_[v]] == v; }
    Node leaf(std::size_t slot) const { return leaf_[slot]; }
    Node subtree_last(Node v) const { return leaf_[ep_[v]]; }
    /// u is an ancestor of v or u == v.
    bool contains(Node u, Node v) const { return u <= v && v <= subtree_last(u); }

    /// Shallowest node spanning exactly [sp, ep] with depth >= min_depth.
    std::optional<Node> node_for_range(SuffixRange range, std::size_t min_depth = 0) const;

    /// Locus of `pattern`: the node closest to the root whose path starts with it.
    std::optional<Node> locus(const SuffixArrayIndex& index, std::span<const Code> pattern) const;

    std::size_t memory_bytes() const noexcept;

    template <class Archive>
    void serialize(Archive& ar) { ar(parent_, sp_, ep_, depth_, leaf_); }

private:
    std::vector<Node> parent_;
    std::vector<std::uint32_t> sp_;
    std::vector<std::uint32_t> ep_;
    std::vector<std::uint32_t> depth_;
    std::vector<Node> leaf_;  // slot -> leaf node
};

}  // namespace ustr
