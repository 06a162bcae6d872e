#include "ustr/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ustr::kernels {

std::vector<Prob> prefix_probabilities(const IndexedText& text, std::size_t len, Execution exec) {
    const long long n = static_cast<long long>(text.sa.size());
    std::vector<Prob> out(static_cast<std::size_t>(n));
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (long long k = 0; k < n; ++k) out[k] = text.slot_probability(static_cast<std::size_t>(k), len);
    } else {
        for (long long k = 0; k < n; ++k) out[k] = text.slot_probability(static_cast<std::size_t>(k), len);
    }
    return out;
}

std::vector<Group> depth_groups(const IndexedText& text, std::size_t len) {
    const auto sa = text.sa.sa();
    const auto lcp = text.sa.lcp();
    std::vector<Group> groups;
    const std::size_t n = sa.size();
    std::size_t k = 0;
    while (k < n) {
        if (text.sa.real_length(sa[k]) < len) {
            ++k;
            continue;
        }
        std::size_t end = k + 1;
        while (end < n && lcp[end] >= len) ++end;
        groups.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(end)});
        k = end;
    }
    return groups;
}

void keep_leftmost(std::span<Prob> values, std::span<const Group> groups, std::span<const std::uint32_t> keys,
                   std::size_t key_count, Execution exec) {
    const long long count = static_cast<long long>(groups.size());
    // stamp[key] = 1 + index of the last group that saw the key
    auto sweep = [&](std::vector<std::uint32_t>& stamp, long long g) {
        const auto mark = static_cast<std::uint32_t>(g + 1);
        for (std::size_t k = groups[g].begin; k < groups[g].end; ++k) {
            if (values[k] <= 0.0) continue;
            std::uint32_t& s = stamp[keys[k]];
            if (s == mark) {
                values[k] = 0.0;
            } else {
                s = mark;
            }
        }
    };
    if (exec == Execution::parallel) {
#pragma omp parallel
        {
            std::vector<std::uint32_t> stamp(key_count, 0);
#pragma omp for schedule(dynamic, 256)
            for (long long g = 0; g < count; ++g) sweep(stamp, g);
        }
    } else {
        std::vector<std::uint32_t> stamp(key_count, 0);
        for (long long g = 0; g < count; ++g) sweep(stamp, g);
    }
}

std::vector<std::vector<Prob>> block_maxima(const IndexedText& text, std::size_t first, std::size_t last,
                                            Execution exec) {
    std::vector<std::vector<Prob>> pb;
    if (first == 0 || first > last) return pb;
    const auto sa = text.sa.sa();
    const std::size_t n = sa.size();
    pb.resize(last - first + 1);
    for (std::size_t i = first; i <= last; ++i) pb[i - first].assign((n + i - 1) / i, 0.0);

    if (exec == Execution::parallel) {
        // contiguous slot chunks; a chunk owns every block inside it, and the
        // blocks straddling its two ends are merged afterwards
        const std::size_t lengths = last - first + 1;
        const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(n / 4096, 256));
        std::vector<Prob> left(chunks * lengths, 0.0), right(chunks * lengths, 0.0);
        const long long chunk_count = static_cast<long long>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
        for (long long c = 0; c < chunk_count; ++c) {
            const std::size_t lo = n * static_cast<std::size_t>(c) / chunks;
            const std::size_t hi = n * static_cast<std::size_t>(c + 1) / chunks;
            if (lo == hi) continue;
            Prob* lv = left.data() + static_cast<std::size_t>(c) * lengths;
            Prob* rv = right.data() + static_cast<std::size_t>(c) * lengths;
            for (std::size_t k = lo; k < hi; ++k) {
                const std::size_t off = sa[k];
                const std::size_t top = std::min(last, text.sa.real_length(off));
                for (std::size_t i = first; i <= top; ++i) {
                    const std::size_t b = k / i;
                    const Prob p = text.tt.window_probability(off, i);
                    Prob& cell = b == lo / i ? lv[i - first] : b == (hi - 1) / i ? rv[i - first] : pb[i - first][b];
                    cell = std::max(cell, p);
                }
            }
        }
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t lo = n * c / chunks;
            const std::size_t hi = n * (c + 1) / chunks;
            if (lo == hi) continue;
            for (std::size_t i = first; i <= last; ++i) {
                Prob& a = pb[i - first][lo / i];
                a = std::max(a, left[c * lengths + i - first]);
                Prob& b = pb[i - first][(hi - 1) / i];
                b = std::max(b, right[c * lengths + i - first]);
            }
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t off = sa[k];
            const std::size_t top = std::min(last, text.sa.real_length(off));
            for (std::size_t i = first; i <= top; ++i) {
                Prob& cell = pb[i - first][k / i];
                cell = std::max(cell, text.tt.window_probability(off, i));
            }
        }
    }
    return pb;
}

}  // namespace ustr::kernels
