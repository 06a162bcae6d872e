#include "ustr/textcore.hpp"

#include <algorithm>
#include <limits>

#include "ustr/errors.hpp"

namespace ustr {

std::vector<Code> encode_text(std::string_view s) {
    std::vector<Code> out;
    out.reserve(s.size());
    Code next_sep = 0;
    for (char c : s) out.push_back(c == kSeparatorSymbol ? next_sep++ : symbol_code(c));
    return out;
}

std::optional<std::vector<Code>> encode_pattern(std::string_view p) {
    std::vector<Code> out;
    out.reserve(p.size());
    for (char c : p) {
        if (!is_valid_symbol(c)) return std::nullopt;
        out.push_back(symbol_code(c));
    }
    return out;
}

std::string decode_text(std::span<const Code> codes) {
    std::string out;
    out.reserve(codes.size());
    for (Code c : codes) out.push_back(code_symbol(c));
    return out;
}

SuffixArrayIndex::SuffixArrayIndex(std::vector<Code> text) : text_(std::move(text)) {
    const std::size_t n = text_.size();
    if (n >= std::numeric_limits<std::uint32_t>::max()) {
        throw CapacityError("text length", "text of length " + std::to_string(n) + " exceeds 32-bit offsets");
    }
    sa_.resize(n);
    if (n == 0) {
        finish();
        return;
    }

    // initial ranks: dense renumbering of the codes
    std::vector<Code> alphabet(text_);
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    std::vector<std::uint32_t> rank(n), next(n), tmp(n);
    for (std::size_t i = 0; i < n; ++i) {
        rank[i] = static_cast<std::uint32_t>(std::lower_bound(alphabet.begin(), alphabet.end(), text_[i]) -
                                             alphabet.begin());
    }
    std::vector<std::uint32_t> count(std::max(alphabet.size(), n) + 1);

    auto counting_sort = [&](std::size_t classes) {
        std::fill(count.begin(), count.begin() + classes + 1, 0);
        for (std::size_t i = 0; i < n; ++i) ++count[rank[i] + 1];
        for (std::size_t c = 1; c <= classes; ++c) count[c] += count[c - 1];
        for (std::size_t k = 0; k < n; ++k) sa_[count[rank[tmp[k]]]++] = tmp[k];
    };

    for (std::size_t i = 0; i < n; ++i) tmp[i] = static_cast<std::uint32_t>(i);
    counting_sort(alphabet.size());
    std::size_t classes = alphabet.size();

    for (std::size_t k = 1; classes < n; k *= 2) {
        // order by second key (rank of i + k, empty first), then stable sort by first key
        std::size_t p = 0;
        for (std::size_t i = n - std::min(k, n); i < n; ++i) tmp[p++] = static_cast<std::uint32_t>(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (sa_[j] >= k) tmp[p++] = static_cast<std::uint32_t>(sa_[j] - k);
        }
        counting_sort(classes);

        auto second = [&](std::uint32_t i) -> std::int64_t { return i + k < n ? rank[i + k] : -1; };
        next[sa_[0]] = 0;
        for (std::size_t j = 1; j < n; ++j) {
            const std::uint32_t a = sa_[j - 1];
            const std::uint32_t b = sa_[j];
            const bool same = rank[a] == rank[b] && second(a) == second(b);
            next[b] = next[a] + (same ? 0 : 1);
        }
        rank.swap(next);
        classes = rank[sa_[n - 1]] + 1;
    }

    // Kasai
    lcp_.assign(n, 0);
    std::vector<std::uint32_t>& inv = next;
    for (std::size_t j = 0; j < n; ++j) inv[sa_[j]] = static_cast<std::uint32_t>(j);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = inv[i];
        if (j == 0) {
            h = 0;
            continue;
        }
        const std::size_t prev = sa_[j - 1];
        while (i + h < n && prev + h < n && text_[i + h] == text_[prev + h] && !is_separator(text_[i + h])) ++h;
        lcp_[j] = static_cast<std::uint32_t>(h);
        if (h > 0) --h;
    }
    finish();
}

void SuffixArrayIndex::finish() {
    const std::size_t n = text_.size();
    isa_.resize(n);
    for (std::size_t j = 0; j < n; ++j) isa_[sa_[j]] = static_cast<std::uint32_t>(j);
    run_.resize(n);
    std::uint32_t run = 0;
    for (std::size_t i = n; i-- > 0;) {
        run = is_separator(text_[i]) ? 0 : run + 1;
        run_[i] = run;
    }
}

int SuffixArrayIndex::compare(std::uint32_t offset, std::span<const Code> pattern) const noexcept {
    const std::size_t n = text_.size();
    for (std::size_t j = 0; j < pattern.size(); ++j) {
        if (offset + j >= n) return -1;
        const Code c = text_[offset + j];
        if (c != pattern[j]) return c < pattern[j] ? -1 : 1;
    }
    return 0;
}

std::optional<SuffixRange> SuffixArrayIndex::suffix_range(std::span<const Code> pattern, std::size_t* steps) const {
    if (pattern.empty() || text_.empty()) return std::nullopt;
    std::size_t local = 0;
    auto first_where = [&](bool strictly_greater) {
        std::size_t lo = 0;
        std::size_t hi = sa_.size();
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            ++local;
            const int c = compare(sa_[mid], pattern);
            if (strictly_greater ? c <= 0 : c < 0) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        return lo;
    };
    const std::size_t sp = first_where(false);
    const std::size_t end = first_where(true);
    if (steps != nullptr) *steps += local;
    if (sp >= end) return std::nullopt;
    return SuffixRange{sp, end - 1};
}

std::size_t SuffixArrayIndex::memory_bytes() const noexcept {
    return text_.size() * sizeof(Code) + (sa_.size() + isa_.size() + lcp_.size() + run_.size()) * 4;
}

TreeView::TreeView(const SuffixArrayIndex& index) {
    const std::size_t n = index.size();
    if (n == 0) return;
    const auto sa = index.sa();
    const auto lcp = index.lcp();

    struct Interval {
        std::uint32_t sp, ep, depth;
    };
    std::vector<Interval> nodes;
    nodes.reserve(2 * n);
    nodes.push_back({0, static_cast<std::uint32_t>(n - 1), 0});
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t off = sa[k];
        const std::size_t real = index.real_length(off);
        // a leaf spells its symbols plus the terminating separator, if any
        const std::size_t depth = off + real < n ? real + 1 : real;
        nodes.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(depth)});
    }

    // lcp intervals; the root (lcp 0 over everything) is already present
    struct Open {
        std::uint32_t depth, lb;
    };
    std::vector<Open> stack{{0, 0}};
    for (std::size_t i = 1; i <= n; ++i) {
        const std::uint32_t l = i < n ? lcp[i] : 0;
        std::uint32_t lb = static_cast<std::uint32_t>(i - 1);
        while (l < stack.back().depth) {
            const Open top = stack.back();
            stack.pop_back();
            nodes.push_back({top.lb, static_cast<std::uint32_t>(i - 1), top.depth});
            lb = top.lb;
        }
        if (l > stack.back().depth) stack.push_back({l, lb});
    }

    // preorder = (sp ascending, ep descending); depth breaks the n == 1 root/leaf tie
    std::sort(nodes.begin(), nodes.end(), [](const Interval& a, const Interval& b) {
        if (a.sp != b.sp) return a.sp < b.sp;
        if (a.ep != b.ep) return a.ep > b.ep;
        return a.depth < b.depth;
    });

    const std::size_t count = nodes.size();
    parent_.resize(count);
    sp_.resize(count);
    ep_.resize(count);
    depth_.resize(count);
    leaf_.resize(n);
    std::vector<Node> open;
    for (std::size_t v = 0; v < count; ++v) {
        const auto& iv = nodes[v];
        sp_[v] = iv.sp;
        ep_[v] = iv.ep;
        depth_[v] = iv.depth;
        while (!open.empty() && ep_[open.back()] < iv.sp) open.pop_back();
        parent_[v] = open.empty() ? kNone : open.back();
        open.push_back(static_cast<Node>(v));
        if (iv.sp == iv.ep) leaf_[iv.sp] = static_cast<Node>(v);
    }
}

std::optional<TreeView::Node> TreeView::node_for_range(SuffixRange range, std::size_t min_depth) const {
    std::size_t lo = 0;
    std::size_t hi = parent_.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const bool before = sp_[mid] < range.sp || (sp_[mid] == range.sp && ep_[mid] > range.ep);
        if (before) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    for (std::size_t v = lo; v < parent_.size() && sp_[v] == range.sp && ep_[v] == range.ep; ++v) {
        if (depth_[v] >= min_depth) return static_cast<Node>(v);
    }
    return std::nullopt;
}

std::optional<TreeView::Node> TreeView::locus(const SuffixArrayIndex& index, std::span<const Code> pattern) const {
    const auto range = index.suffix_range(pattern);
    if (!range) return std::nullopt;
    return node_for_range(*range, pattern.size());
}

std::size_t TreeView::memory_bytes() const noexcept {
    return (parent_.size() + sp_.size() + ep_.size() + depth_.size() + leaf_.size()) * 4;
}

}  // namespace ustr
