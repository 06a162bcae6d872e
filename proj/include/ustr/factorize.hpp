#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ustr/execution.hpp"
#include "ustr/model.hpp"
#include "ustr/textcore.hpp"

namespace ustr {

struct MaximalFactor {
    std::size_t start;  // 1-based position in the source string
    std::string symbols;
    Prob prob;

    friend bool operator==(const MaximalFactor&, const MaximalFactor&) = default;
};

/// Maximal factors of `u` aligned at `start`, in distribution order: every
/// string with probability >= tau_min whose one-symbol extensions all fall
/// below tau_min (or run past the end).
std::vector<MaximalFactor> maximal_factors(const UncertainString& u, Prob tau_min, std::size_t start);

/// Placement of one factor inside the transformed text.
struct FactorRecord {
    std::uint32_t offset;  // first symbol in t
    std::uint32_t length;
    std::uint32_t doc;
    std::uint32_t start;  // 1-based source position
    Prob prob;

    template <class Archive>
    void serialize(Archive& ar) { ar(offset, length, doc, start, prob); }
};

/// Correlated symbol occurrence inside t, resolved against its source string.
struct CorrectionEntry {
    std::uint32_t offset;     // t offset of the correlated symbol
    std::uint32_t cond_pos;   // 1-based conditioning position
    Code cond_code;
    Prob p_plus;
    Prob p_minus;
    Prob marginal;
    Prob base;                // value folded into cum

    template <class Archive>
    void serialize(Archive& ar) { ar(offset, cond_pos, cond_code, p_plus, p_minus, marginal, base); }
};

struct FactorizeOptions {
    /// Total length cap for t (symbols plus separators); default 64*n/tau_min^2.
    std::optional<std::size_t> length_cap;
    Execution execution = Execution::parallel;
};

/// Concatenated maximal factors: t, the position map pos (1-based, 0 at
/// separators), the owning document, and the within-factor cumulative
/// product cum (-1 at separators).
class TransformedText {
public:
    TransformedText() = default;

    Prob tau_min() const noexcept { return tau_min_; }
    std::size_t size() const noexcept { return text_.size(); }
    std::size_t doc_count() const noexcept { return doc_base_.size(); }

    std::span<const Code> text() const noexcept { return text_; }
    std::span<const std::uint32_t> pos() const noexcept { return pos_; }
    std::span<const Prob> cum() const noexcept { return cum_; }
    std::span<const FactorRecord> factors() const noexcept { return factors_; }
    std::span<const CorrectionEntry> corrections() const noexcept { return corrections_; }

    std::uint32_t doc_of(std::size_t offset) const noexcept { return doc_.empty() ? 0 : doc_[offset]; }
    /// 1-based position across all documents: doc_base[doc] + pos. 0 at separators.
    std::uint64_t global_position(std::size_t offset) const noexcept {
        return pos_[offset] == 0 ? 0 : doc_base_[doc_of(offset)] + pos_[offset];
    }
    /// Sum of document lengths.
    std::uint64_t total_positions() const noexcept { return total_positions_; }

    std::size_t max_factor_length() const noexcept { return max_factor_length_; }

    /// Occurrence probability of the window t[offset, offset+len) at its mapped
    /// source position: C-ratio times the correction of every correlated
    /// symbol in the window. The window must lie inside one factor.
    Prob window_probability(std::size_t offset, std::size_t len) const;

    std::size_t memory_bytes() const noexcept;

    template <class Archive>
    void save(Archive& ar) const {
        ar(tau_min_, text_, pos_, doc_, cum_, factors_, corrections_, doc_base_, total_positions_,
           max_factor_length_);
    }
    template <class Archive>
    void load(Archive& ar) {
        ar(tau_min_, text_, pos_, doc_, cum_, factors_, corrections_, doc_base_, total_positions_,
           max_factor_length_);
    }

private:
    friend TransformedText transform_collection(const DocumentCollection&, Prob, const FactorizeOptions&);
    friend TransformedText without_factor(const TransformedText&, std::size_t);

    Prob tau_min_ = 1.0;
    std::vector<Code> text_;
    std::vector<std::uint32_t> pos_;
    std::vector<std::uint32_t> doc_;  // empty for a single document
    std::vector<Prob> cum_;
    std::vector<FactorRecord> factors_;
    std::vector<CorrectionEntry> corrections_;  // sorted by offset
    std::vector<std::uint64_t> doc_base_;
    std::uint64_t total_positions_ = 0;
    std::size_t max_factor_length_ = 0;
};

std::size_t default_length_cap(std::size_t n, Prob tau_min);

/// Transform of one string. Throws CapacityError("length-cap") past the cap
/// and std::invalid_argument for tau_min outside (kProbTolerance, 1].
TransformedText transform(const UncertainString& u, Prob tau_min, const FactorizeOptions& options = {});

/// Transform of a collection; factors never span documents.
TransformedText transform_collection(const DocumentCollection& docs, Prob tau_min,
                                     const FactorizeOptions& options = {});

struct ConservationFailure {
    std::size_t doc;
    std::string pattern;
    std::size_t position;  // 1-based
    std::string reason;
};

/// Exhaustive check that every aligned string of probability >= tau_min
/// occurs in t at its position with the right window probability, and that
/// every window of t reproduces the model probability. Meant for n <= 40.
std::optional<ConservationFailure> conservation_check(const UncertainString& u, Prob tau_min,
                                                      const TransformedText& tt);
std::optional<ConservationFailure> conservation_check(const DocumentCollection& docs, Prob tau_min,
                                                      const TransformedText& tt);

/// Copy of `tt` without the factor at index `k`; used to show the check
/// catches missing factors.
TransformedText without_factor(const TransformedText& tt, std::size_t k);

}  // namespace ustr
