#include "ustr/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_set>

#include "ustr/errors.hpp"

namespace ustr {

PositionDistribution::PositionDistribution(std::vector<Alternative> entries) {
    entries_.reserve(entries.size());
    for (const auto& e : entries) {
        if (e.prob != 0.0) entries_.push_back(e);
    }
}

Prob PositionDistribution::prob_of(Symbol c) const noexcept {
    for (const auto& e : entries_) {
        if (e.symbol == c) return e.prob;
    }
    return 0.0;
}

UncertainString::UncertainString(std::string name, std::vector<PositionDistribution> positions,
                                 std::vector<Correlation> correlations)
    : name_(std::move(name)), positions_(std::move(positions)), correlations_(std::move(correlations)) {
    index_correlations();
}

UncertainString UncertainString::deterministic(std::string name, std::string_view text) {
    std::vector<PositionDistribution> positions;
    positions.reserve(text.size());
    for (char c : text) positions.emplace_back(std::vector<Alternative>{{c, 1.0}});
    return UncertainString(std::move(name), std::move(positions));
}

void UncertainString::index_correlations() {
    by_pos_.assign(positions_.size(), {});
    for (std::size_t k = 0; k < correlations_.size(); ++k) {
        const auto& c = correlations_[k];
        if (c.src_pos >= 1 && c.src_pos <= positions_.size()) by_pos_[c.src_pos - 1].push_back(k);
    }
}

const Correlation* UncertainString::correlation_for(std::size_t pos, Symbol sym) const noexcept {
    if (pos == 0 || pos > by_pos_.size()) return nullptr;
    for (std::size_t k : by_pos_[pos - 1]) {
        if (correlations_[k].src_sym == sym) return &correlations_[k];
    }
    return nullptr;
}

Prob UncertainString::marginal(std::size_t pos, Symbol sym) const noexcept {
    if (const Correlation* c = correlation_for(pos, sym)) {
        const Prob q = c->cond_pos >= 1 && c->cond_pos <= size() ? at(c->cond_pos).prob_of(c->cond_sym) : 0.0;
        return q * c->p_plus + (1.0 - q) * c->p_minus;
    }
    return pos >= 1 && pos <= size() ? at(pos).prob_of(sym) : 0.0;
}

std::vector<Violation> validate(const UncertainString& u) {
    std::vector<Violation> out;
    const std::size_t n = u.size();
    if (n == 0) out.push_back({0, "string has no positions"});

    for (std::size_t i = 1; i <= n; ++i) {
        const auto& entries = u.at(i).entries();
        if (entries.empty()) {
            out.push_back({i, "position has no characters"});
            continue;
        }
        std::set<Symbol> seen;
        Prob sum = 0.0;
        for (const auto& e : entries) {
            if (!is_valid_symbol(e.symbol)) {
                out.push_back({i, std::string("invalid symbol code ") + std::to_string(static_cast<int>(e.symbol))});
            }
            if (!seen.insert(e.symbol).second) {
                out.push_back({i, std::string("duplicate symbol '") + e.symbol + "'"});
            }
            if (!(e.prob > 0.0 && e.prob <= 1.0)) {
                out.push_back({i, std::string("probability of '") + e.symbol + "' outside (0,1]"});
            }
            sum += e.prob;
        }
        if (std::abs(sum - 1.0) > kProbTolerance) {
            out.push_back({i, "probabilities sum to " + std::to_string(sum) + ", expected 1"});
        }
    }

    std::set<std::pair<std::size_t, Symbol>> sources;
    for (const auto& c : u.correlations()) {
        const std::size_t at = c.src_pos;
        if (c.src_pos < 1 || c.src_pos > n) {
            out.push_back({0, "correlation source position " + std::to_string(c.src_pos) + " out of range"});
            continue;
        }
        if (c.cond_pos < 1 || c.cond_pos > n) {
            out.push_back({at, "correlation conditioning position " + std::to_string(c.cond_pos) + " out of range"});
            continue;
        }
        if (c.cond_pos == c.src_pos) out.push_back({at, "correlation conditions a position on itself"});
        if (!u.at(c.src_pos).contains(c.src_sym)) {
            out.push_back({at, std::string("correlated symbol '") + c.src_sym + "' absent at its position"});
        }
        if (!u.at(c.cond_pos).contains(c.cond_sym)) {
            out.push_back({at, std::string("conditioning symbol '") + c.cond_sym + "' has zero probability at position " +
                                   std::to_string(c.cond_pos)});
        }
        if (!(c.p_plus >= 0.0 && c.p_plus <= 1.0) || !(c.p_minus >= 0.0 && c.p_minus <= 1.0)) {
            out.push_back({at, "correlation probabilities outside [0,1]"});
        }
        if (!sources.insert({c.src_pos, c.src_sym}).second) {
            out.push_back({at, std::string("more than one correlation for '") + c.src_sym + "' (multi-way dependence)"});
        }
    }
    return out;
}

std::vector<Violation> validate(const DocumentCollection& docs) {
    std::vector<Violation> out;
    if (docs.empty()) out.push_back({0, "collection is empty"});
    std::unordered_set<std::string> names;
    for (const auto& d : docs) {
        if (!names.insert(d.name()).second) out.push_back({0, "duplicate document name '" + d.name() + "'"});
        for (auto v : validate(d)) {
            v.rule = d.name() + ": " + v.rule;
            out.push_back(std::move(v));
        }
    }
    return out;
}

Prob occurrence_probability(const UncertainString& u, std::string_view p, std::size_t start) {
    const std::size_t n = u.size();
    if (start < 1 || start + p.size() > n + 1) {
        throw RangeError("window [" + std::to_string(start) + ", " + std::to_string(start + p.size()) +
                         ") outside string of length " + std::to_string(n));
    }
    const std::size_t first = start;
    const std::size_t last = start + p.size() - 1;
    Prob prob = 1.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const std::size_t pos = start + k;
        const Prob base = u.at(pos).prob_of(p[k]);
        if (base == 0.0) return 0.0;
        if (const Correlation* c = u.correlation_for(pos, p[k])) {
            if (c->cond_pos >= first && c->cond_pos <= last) {
                prob *= p[c->cond_pos - first] == c->cond_sym ? c->p_plus : c->p_minus;
            } else {
                const Prob q = u.at(c->cond_pos).prob_of(c->cond_sym);
                prob *= q * c->p_plus + (1.0 - q) * c->p_minus;
            }
        } else {
            prob *= base;
        }
    }
    return prob;
}

namespace {

// Largest value the factor of (pos, sym) can take in any window.
Prob factor_upper_bound(const UncertainString& u, std::size_t pos, const Alternative& alt) {
    if (const Correlation* c = u.correlation_for(pos, alt.symbol)) return std::max(c->p_plus, c->p_minus);
    return alt.prob;
}

}  // namespace

std::vector<World> enumerate_worlds(const UncertainString& u, Prob floor) {
    const std::size_t n = u.size();
    if (floor <= 0.0 && n > kMaxExhaustiveWorlds) {
        throw CapacityError("floor", "exhaustive world enumeration refused for length " + std::to_string(n) +
                                         " > " + std::to_string(kMaxExhaustiveWorlds) + "; pass a positive floor");
    }
    std::vector<World> worlds;
    if (n == 0) return worlds;

    std::string current(n, '\0');
    // bound[k] = product of factor upper bounds over positions 1..k
    std::vector<Prob> bound(n + 1, 1.0);
    std::vector<std::size_t> choice(n, 0);
    std::size_t depth = 0;  // number of fixed positions
    while (true) {
        if (depth == n) {
            const Prob prob = occurrence_probability(u, current, 1);
            if (floor <= 0.0 || meets(prob, floor)) {
                if (worlds.size() >= kMaxWorldCount) {
                    throw CapacityError("floor", "more than " + std::to_string(kMaxWorldCount) + " worlds above floor");
                }
                worlds.push_back({current, prob});
            }
            --depth;
            ++choice[depth];
            continue;
        }
        const auto& entries = u.at(depth + 1).entries();
        if (choice[depth] >= entries.size()) {
            if (depth == 0) break;
            choice[depth] = 0;
            --depth;
            ++choice[depth];
            continue;
        }
        const auto& alt = entries[choice[depth]];
        const Prob b = bound[depth] * factor_upper_bound(u, depth + 1, alt);
        if (floor > 0.0 && !meets(b, floor)) {
            ++choice[depth];
            continue;
        }
        current[depth] = alt.symbol;
        bound[depth + 1] = b;
        ++depth;
    }
    std::sort(worlds.begin(), worlds.end(), [](const World& a, const World& b) { return a.text < b.text; });
    return worlds;
}

std::vector<World> aligned_strings(const UncertainString& u, std::size_t start, Prob floor, std::size_t max_len) {
    std::vector<World> out;
    const std::size_t n = u.size();
    if (start < 1 || start > n || max_len == 0) return out;
    const std::size_t limit = std::min(max_len, n - start + 1);

    std::string current;
    std::vector<Prob> bound{1.0};
    std::vector<std::size_t> choice{0};
    while (!choice.empty()) {
        const std::size_t depth = current.size();
        const auto& entries = u.at(start + depth).entries();
        if (choice.back() >= entries.size()) {
            choice.pop_back();
            bound.pop_back();
            if (!current.empty()) current.pop_back();
            if (!choice.empty()) ++choice.back();
            continue;
        }
        const auto& alt = entries[choice.back()];
        const Prob b = bound.back() * factor_upper_bound(u, start + depth, alt);
        if (!meets(b, floor)) {
            ++choice.back();
            continue;
        }
        current.push_back(alt.symbol);
        const Prob prob = occurrence_probability(u, current, start);
        if (meets(prob, floor)) out.push_back({current, prob});
        if (current.size() < limit) {
            bound.push_back(b);
            choice.push_back(0);
        } else {
            current.pop_back();
            ++choice.back();
        }
    }
    return out;
}

}  // namespace ustr
