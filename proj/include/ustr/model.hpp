#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ustr/probability.hpp"

namespace ustr {

using Symbol = char;

/// Separator symbol of the text encoding; never valid inside a distribution.
inline constexpr Symbol kSeparatorSymbol = '$';

/// Printable, non-space ASCII minus the separator and the comment marker.
constexpr bool is_valid_symbol(Symbol c) noexcept {
    return c > ' ' && c < 0x7f && c != kSeparatorSymbol && c != '#';
}

struct Alternative {
    Symbol symbol;
    Prob prob;

    template <class Archive>
    void serialize(Archive& ar) { ar(symbol, prob); }
};

/// Character distribution at one position. Zero-probability entries are never stored.
class PositionDistribution {
public:
    PositionDistribution() = default;
    /// Drops entries with prob == 0; keeps everything else as given (validate() checks the rest).
    explicit PositionDistribution(std::vector<Alternative> entries);
    PositionDistribution(std::initializer_list<Alternative> entries)
        : PositionDistribution(std::vector<Alternative>(entries)) {}

    const std::vector<Alternative>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Probability of `c` at this position, 0 when absent.
    Prob prob_of(Symbol c) const noexcept;
    bool contains(Symbol c) const noexcept { return prob_of(c) > 0.0; }
    bool is_deterministic() const noexcept { return entries_.size() == 1; }

    template <class Archive>
    void serialize(Archive& ar) { ar(entries_); }

private:
    std::vector<Alternative> entries_;
};

/// pr(src_sym at src_pos) is p_plus when cond_sym occurs at cond_pos, p_minus otherwise.
/// Positions are 1-based.
struct Correlation {
    std::size_t src_pos = 0;
    Symbol src_sym = 0;
    std::size_t cond_pos = 0;
    Symbol cond_sym = 0;
    Prob p_plus = 0.0;
    Prob p_minus = 0.0;

    template <class Archive>
    void serialize(Archive& ar) { ar(src_pos, src_sym, cond_pos, cond_sym, p_plus, p_minus); }
};

/// Character-level uncertain string. Immutable after construction.
class UncertainString {
public:
    UncertainString() = default;
    UncertainString(std::string name, std::vector<PositionDistribution> positions,
                    std::vector<Correlation> correlations = {});

    /// Every position holds one symbol with probability 1.
    static UncertainString deterministic(std::string name, std::string_view text);

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return positions_.size(); }
    const std::vector<PositionDistribution>& positions() const noexcept { return positions_; }
    const std::vector<Correlation>& correlations() const noexcept { return correlations_; }

    /// 1-based access.
    const PositionDistribution& at(std::size_t pos) const { return positions_.at(pos - 1); }

    /// Correlation whose source is (pos, sym), or nullptr. `pos` is 1-based.
    const Correlation* correlation_for(std::size_t pos, Symbol sym) const noexcept;

    /// Unconditional probability of `sym` at `pos` once correlations are
    /// marginalised over the conditioner: q*p_plus + (1-q)*p_minus, or the
    /// stored probability when uncorrelated.
    Prob marginal(std::size_t pos, Symbol sym) const noexcept;

    template <class Archive>
    void save(Archive& ar) const { ar(name_, positions_, correlations_); }
    template <class Archive>
    void load(Archive& ar) {
        ar(name_, positions_, correlations_);
        index_correlations();
    }

private:
    void index_correlations();

    std::string name_;
    std::vector<PositionDistribution> positions_;
    std::vector<Correlation> correlations_;
    // by_pos_[pos-1] lists indices into correlations_ with that source position
    std::vector<std::vector<std::size_t>> by_pos_;
};

using DocumentCollection = std::vector<UncertainString>;

struct Violation {
    std::size_t position;  // 1-based; 0 for whole-string rules
    std::string rule;
};

/// All invariant violations of `u`; empty when valid.
std::vector<Violation> validate(const UncertainString& u);

/// Violations of the collection rules (non-empty, unique names) plus every
/// per-document violation, prefixed with the document name.
std::vector<Violation> validate(const DocumentCollection& docs);

/// Probability that `p` occurs at 1-based `start`, with correlation
/// corrections. Throws RangeError when the window leaves the string.
Prob occurrence_probability(const UncertainString& u, std::string_view p, std::size_t start);

struct World {
    std::string text;
    Prob prob;
};

/// Full-length possible worlds with probability >= floor, lexicographic order.
/// floor == 0 is only allowed for strings of length <= kMaxExhaustiveWorlds.
std::vector<World> enumerate_worlds(const UncertainString& u, Prob floor);

inline constexpr std::size_t kMaxExhaustiveWorlds = 12;
inline constexpr std::size_t kMaxWorldCount = 1u << 22;

/// Every deterministic string aligned at 1-based `start`, of length 1..max_len,
/// whose occurrence probability reaches `floor`. Brute force over the model,
/// used by the oracle and by verification code.
std::vector<World> aligned_strings(const UncertainString& u, std::size_t start, Prob floor,
                                   std::size_t max_len);

}  // namespace ustr
