#include "ustr/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace ustr {

std::size_t Rng::below(std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::size_t>(x % range);
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {

std::string letters_of(std::string_view corpus, std::string_view alphabet) {
    std::set<char> s(alphabet.begin(), alphabet.end());
    if (alphabet.empty()) s.insert(corpus.begin(), corpus.end());
    for (char c : std::string_view("ACGT")) {
        if (s.size() >= 2) break;
        s.insert(c);
    }
    return {s.begin(), s.end()};
}

// Letter found at the tracked offset of one random edit neighbour of `window`.
char neighbour_letter(std::string window, std::size_t at, std::size_t radius, const std::string& letters, Rng& rng) {
    const std::size_t edits = 1 + rng.below(std::max<std::size_t>(1, radius));
    for (std::size_t e = 0; e < edits; ++e) {
        const std::size_t kind = rng.below(3);
        if (kind == 0 || window.size() <= 1) {  // substitution
            window[rng.below(window.size())] = letters[rng.below(letters.size())];
        } else if (kind == 1) {  // insertion before j
            const std::size_t j = rng.below(window.size() + 1);
            window.insert(window.begin() + static_cast<std::ptrdiff_t>(j), letters[rng.below(letters.size())]);
            if (j <= at) ++at;
        } else {  // deletion
            const std::size_t j = rng.below(window.size());
            window.erase(window.begin() + static_cast<std::ptrdiff_t>(j));
            if (j < at) --at;
        }
    }
    return window[std::min(at, window.size() - 1)];
}

}  // namespace

UncertainString generate(std::string_view corpus, const GenConfig& cfg, std::string name) {
    if (corpus.empty()) throw std::invalid_argument("corpus is empty");
    if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
    if (cfg.choices < 2) throw std::invalid_argument("choices must be at least 2");
    for (char c : corpus) {
        if (!is_valid_symbol(c)) throw std::invalid_argument(std::string("corpus holds invalid symbol '") + c + "'");
    }
    Rng rng(cfg.seed);
    const std::string letters = letters_of(corpus, cfg.alphabet);
    const std::size_t n = corpus.size();
    const auto uncertain = static_cast<std::size_t>(std::llround(cfg.theta * static_cast<double>(n)));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = 0; i < uncertain; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
    std::vector<bool> is_uncertain(n, false);
    for (std::size_t i = 0; i < uncertain; ++i) is_uncertain[order[i]] = true;

    std::vector<PositionDistribution> positions;
    positions.reserve(n);
    const std::size_t samples = std::max<std::size_t>(1, cfg.neighborhood_samples);
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_uncertain[i]) {
            positions.push_back(PositionDistribution{{corpus[i], 1.0}});
            continue;
        }
        const std::size_t lo = i >= cfg.edit_radius ? i - cfg.edit_radius : 0;
        const std::size_t hi = std::min(n, i + cfg.edit_radius + 1);
        const std::string window(corpus.substr(lo, hi - lo));
        std::map<char, std::size_t> freq;
        for (std::size_t s = 0; s < samples; ++s) ++freq[neighbour_letter(window, i - lo, cfg.edit_radius, letters, rng)];
        if (freq.size() < 2) {
            char other = letters[rng.below(letters.size())];
            while (freq.count(other) != 0) other = letters[rng.below(letters.size())];
            freq[other] = 1;
        }
        std::vector<std::pair<std::size_t, char>> ranked;
        for (const auto& [c, k] : freq) ranked.emplace_back(k, c);
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        ranked.resize(std::min(ranked.size(), cfg.choices));
        std::size_t total = 0;
        for (const auto& r : ranked) total += r.first;
        std::vector<Alternative> alts;
        for (const auto& [k, c] : ranked) alts.push_back({c, static_cast<double>(k) / static_cast<double>(total)});
        positions.emplace_back(std::move(alts));
    }

    std::vector<Correlation> correlations;
    if (cfg.correlations > 0) {
        // disjoint pairs of uncertain positions within the edit radius
        std::vector<bool> used(n, false);
        const std::size_t reach = std::max<std::size_t>(1, cfg.edit_radius);
        for (std::size_t attempt = 0; attempt < 50 * cfg.correlations && correlations.size() < cfg.correlations;
             ++attempt) {
            if (uncertain < 2) break;
            const std::size_t i = order[rng.below(uncertain)];
            const std::size_t j = order[rng.below(uncertain)];
            if (i == j || used[i] || used[j] || (i > j ? i - j : j - i) > reach) continue;
            used[i] = used[j] = true;
            const auto& src = positions[i].entries();
            const auto& cond = positions[j].entries();
            Correlation c;
            c.src_pos = i + 1;
            c.src_sym = src[rng.below(src.size())].symbol;
            c.cond_pos = j + 1;
            c.cond_sym = cond[rng.below(cond.size())].symbol;
            c.p_plus = std::round(rng.unit() * 100.0) / 100.0;
            c.p_minus = std::round(rng.unit() * 100.0) / 100.0;
            correlations.push_back(c);
        }
    }
    return UncertainString(std::move(name), std::move(positions), std::move(correlations));
}

std::string random_corpus(std::size_t length, std::string_view alphabet, std::uint64_t seed) {
    if (alphabet.empty()) throw std::invalid_argument("alphabet is empty");
    Rng rng(seed);
    std::string out(length, '\0');
    for (auto& c : out) c = alphabet[rng.below(alphabet.size())];
    return out;
}

std::vector<std::string> chunk_corpus(std::string_view corpus, double mean, double stddev, std::size_t min_len,
                                      std::size_t max_len, std::uint64_t seed) {
    if (min_len == 0 || min_len > max_len) throw std::invalid_argument("chunk bounds must satisfy 0 < min <= max");
    Rng rng(seed);
    std::vector<std::string> out;
    std::size_t at = 0;
    while (at < corpus.size()) {
        // Box-Muller
        const double u1 = 1.0 - rng.unit();
        const double u2 = rng.unit();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        const double want = std::clamp(std::round(mean + stddev * z), static_cast<double>(min_len),
                                       static_cast<double>(max_len));
        const std::size_t len = std::min(static_cast<std::size_t>(want), corpus.size() - at);
        out.emplace_back(corpus.substr(at, len));
        at += len;
    }
    return out;
}

}  // namespace ustr
