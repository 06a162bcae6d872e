#include "ustr/approx.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "ustr/errors.hpp"
#include "ustr/rmq.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ustr {

namespace {

using Node = TreeView::Node;

// Lowest common ancestors via the shallowest node between two preorder ranks.
class LcaIndex {
public:
    explicit LcaIndex(const TreeView& tree) : tree_(tree) {
        const std::size_t n = tree.node_count();
        std::vector<std::uint32_t> depth(n, 0);
        std::vector<double> neg(n, 0.0);
        for (std::size_t v = 1; v < n; ++v) {
            depth[v] = depth[tree.parent(static_cast<Node>(v))] + 1;
            neg[v] = -static_cast<double>(depth[v]);
        }
        rmq_ = RangeMaxIndex(std::move(neg));
    }

    Node lca(Node a, Node b) const {
        if (a == b) return a;
        if (a > b) std::swap(a, b);
        if (tree_.contains(a, b)) return a;
        return tree_.parent(static_cast<Node>(rmq_.argmax(a + 1, b)));
    }

private:
    const TreeView& tree_;
    RangeMaxIndex rmq_;
};

}  // namespace

std::vector<RawLink> build_links(const IndexedText& text, Execution exec) {
    std::vector<RawLink> out;
    const TreeView& tree = text.tree;
    if (tree.empty()) return out;
    const auto sa = text.sa.sa();
    const std::size_t n = sa.size();
    const std::size_t keys = text.tt.total_positions() + 1;

    // slots grouped by source position, ascending slot order within a group
    std::vector<std::uint32_t> begin(keys + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto d = text.tt.global_position(sa[k]);
        if (d != 0) ++begin[d + 1];
    }
    for (std::size_t d = 1; d <= keys; ++d) begin[d] += begin[d - 1];
    std::vector<std::uint32_t> slots(begin[keys]);
    {
        std::vector<std::uint32_t> fill(begin.begin(), begin.end() - 1);
        for (std::size_t k = 0; k < n; ++k) {
            const auto d = text.tt.global_position(sa[k]);
            if (d != 0) slots[fill[d]++] = static_cast<std::uint32_t>(k);
        }
    }

    const LcaIndex lca(tree);
    // position d writes at most 2*count - 1 links into [2*begin[d], 2*begin[d+1])
    std::vector<RawLink> buffer(2 * slots.size());
    std::vector<std::uint32_t> produced(keys, 0);

    auto mark = [&](std::size_t d, std::vector<std::pair<Node, std::uint32_t>>& nodes, std::vector<Node>& stack) {
        const std::size_t lo = begin[d];
        const std::size_t hi = begin[d + 1];
        if (lo == hi) return;
        nodes.clear();
        for (std::size_t j = lo; j < hi; ++j) {
            nodes.emplace_back(tree.leaf(slots[j]), sa[slots[j]]);
            if (j > lo) nodes.emplace_back(lca.lca(tree.leaf(slots[j - 1]), tree.leaf(slots[j])), sa[slots[j - 1]]);
        }
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end(),
                                [](const auto& a, const auto& b) { return a.first == b.first; }),
                    nodes.end());
        stack.clear();
        std::size_t count = 0;
        RawLink* dst = buffer.data() + 2 * lo;
        for (const auto& [v, witness] : nodes) {
            while (!stack.empty() && !tree.contains(stack.back(), v)) stack.pop_back();
            const Node target = stack.empty() ? TreeView::root() : stack.back();
            if (v != TreeView::root()) {
                dst[count++] = {v, target, static_cast<std::uint32_t>(d), witness};
            }
            stack.push_back(v);
        }
        produced[d] = static_cast<std::uint32_t>(count);
    };

    const long long key_count = static_cast<long long>(keys);
    if (exec == Execution::parallel) {
#pragma omp parallel
        {
            std::vector<std::pair<Node, std::uint32_t>> nodes;
            std::vector<Node> stack;
#pragma omp for schedule(dynamic, 64)
            for (long long d = 1; d < key_count; ++d) mark(static_cast<std::size_t>(d), nodes, stack);
        }
    } else {
        std::vector<std::pair<Node, std::uint32_t>> nodes;
        std::vector<Node> stack;
        for (long long d = 1; d < key_count; ++d) mark(static_cast<std::size_t>(d), nodes, stack);
    }

    for (std::size_t d = 1; d < keys; ++d) {
        const RawLink* src = buffer.data() + 2 * begin[d];
        out.insert(out.end(), src, src + produced[d]);
    }
    return out;
}

namespace {

void split_chain(const IndexedText& text, const RawLink& r, std::uint32_t chain, Prob epsilon,
                 std::vector<Link>& out) {
    const TreeView& tree = text.tree;
    const std::size_t target_depth = tree.depth(r.target);
    const std::size_t top = std::min(tree.depth(r.origin), text.sa.real_length(r.witness));
    if (top <= target_depth) return;

    Node base = r.origin;
    auto base_at = [&](std::size_t depth) {
        while (tree.parent(base) != TreeView::kNone && tree.depth(tree.parent(base)) >= depth) base = tree.parent(base);
        return base;
    };

    Link seg{};
    seg.pos_id = r.pos_id;
    seg.chain = chain;
    seg.origin_depth = static_cast<std::uint32_t>(top);
    seg.origin_pre = base_at(top);
    seg.stored_prob = seg.low_prob = text.tt.window_probability(r.witness, top);
    std::optional<Prob> previous;  // stored_prob of the piece below
    for (std::size_t depth = top - 1; depth > target_depth; --depth) {
        const Prob p = text.tt.window_probability(r.witness, depth);
        const Prob hi = std::max(seg.stored_prob, p);
        const Prob lo = std::min(seg.low_prob, p);
        // cut on spread, or when growing would widen the step from the piece below past epsilon
        const bool step = previous && hi > seg.stored_prob && hi - *previous > epsilon;
        if (hi - lo > epsilon || step) {
            previous = seg.stored_prob;
            seg.target_depth = static_cast<std::uint32_t>(depth);
            seg.target_pre = base_at(depth);
            out.push_back(seg);
            seg.origin_depth = static_cast<std::uint32_t>(depth);
            seg.origin_pre = seg.target_pre;
            seg.stored_prob = seg.low_prob = p;
        } else {
            seg.stored_prob = hi;
            seg.low_prob = lo;
        }
    }
    seg.target_depth = static_cast<std::uint32_t>(target_depth);
    seg.target_pre = r.target;
    out.push_back(seg);
}

bool link_order(const Link& a, const Link& b) {
    return std::tie(a.origin_pre, a.origin_depth, a.pos_id, a.chain) <
           std::tie(b.origin_pre, b.origin_depth, b.pos_id, b.chain);
}

}  // namespace

std::vector<Link> partition_links(const IndexedText& text, const std::vector<RawLink>& raw, Prob epsilon,
                                  Execution exec) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
    }
    std::vector<Link> out;
    const long long count = static_cast<long long>(raw.size());
    if (exec == Execution::parallel) {
#pragma omp parallel
        {
            std::vector<Link> local;
#pragma omp for schedule(dynamic, 256) nowait
            for (long long c = 0; c < count; ++c) {
                split_chain(text, raw[c], static_cast<std::uint32_t>(c), epsilon, local);
            }
#pragma omp critical
            out.insert(out.end(), local.begin(), local.end());
        }
    } else {
        for (long long c = 0; c < count; ++c) split_chain(text, raw[c], static_cast<std::uint32_t>(c), epsilon, out);
    }
    std::sort(out.begin(), out.end(), link_order);
    return out;
}

LinkIndex LinkIndex::build(std::shared_ptr<const IndexedText> text, Prob epsilon, Execution exec) {
    LinkIndex idx;
    idx.text_ = std::move(text);
    idx.epsilon_ = epsilon;
    const auto raw = build_links(*idx.text_, exec);
    idx.raw_count_ = raw.size();
    idx.links_ = partition_links(*idx.text_, raw, epsilon, exec);
    return idx;
}

LinkIndex LinkIndex::build(const UncertainString& u, Prob tau_min, Prob epsilon, const IndexConfig& config) {
    FactorizeOptions fo = config.factorize;
    fo.execution = config.execution;
    return build(IndexedText::build(transform(u, tau_min, fo)), epsilon, config.execution);
}

std::vector<std::size_t> LinkIndex::query(std::string_view p, Prob tau, QueryStats* stats) const {
    std::vector<std::size_t> out;
    for (const Hit& h : query_hits(p, tau, stats)) out.push_back(h.position);
    return out;
}

std::vector<Link> LinkIndex::stabbed(std::string_view p, QueryStats* stats_out) const {
    QueryStats stats;
    std::vector<Link> out;
    const IndexedText& t = *text_;
    const auto code = encode_pattern(p);
    const std::size_t m = p.size();
    std::optional<SuffixRange> range;
    if (code && m > 0) range = t.sa.suffix_range(*code, &stats.search_steps);
    std::optional<Node> locus;
    if (range) locus = t.tree.node_for_range(*range, m);
    if (locus) {
        const Node first = *locus;
        const Node last = t.tree.subtree_last(first);
        auto lo = std::lower_bound(links_.begin(), links_.end(), first,
                                   [](const Link& l, Node v) { return l.origin_pre < v; });
        auto hi = std::upper_bound(lo, links_.end(), last, [](Node v, const Link& l) { return v < l.origin_pre; });
        for (auto it = lo; it != hi; ++it) {
            ++stats.elements_scanned;
            if (it->target_depth < m && m <= it->origin_depth) out.push_back(*it);
        }
    }
    if (stats_out != nullptr) *stats_out = stats;
    return out;
}

std::vector<Hit> LinkIndex::query_hits(std::string_view p, Prob tau, QueryStats* stats_out) const {
    check_threshold(tau, tau_min());
    QueryStats stats;
    std::vector<Hit> hits;
    for (const Link& l : stabbed(p, &stats)) {
        if (meets(l.stored_prob, tau)) hits.push_back({l.pos_id, l.stored_prob});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.position < b.position; });
    hits.erase(std::unique(hits.begin(), hits.end(),
                           [](const Hit& a, const Hit& b) { return a.position == b.position; }),
               hits.end());
    stats.outputs = hits.size();
    if (stats_out != nullptr) *stats_out = stats;
    return hits;
}

}  // namespace ustr
