#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ustr/approx.hpp"
#include "ustr/datagen.hpp"
#include "ustr/listing.hpp"
#include "ustr/model.hpp"
#include "ustr/qindex.hpp"

/// Seeded cross-checks of the indexes against the brute-force oracle.
namespace ustr::verify {

struct SuiteConfig {
    std::size_t min_n = 5;
    std::size_t max_n = 50;
    std::size_t max_alphabet = 4;
    std::vector<double> thetas{0.1, 0.3, 0.5};
    std::vector<Prob> tau_mins{0.05, 0.1, 0.2};
    double correlated_fraction = 0.3;
    std::size_t max_pattern = 8;
    std::size_t world_samples = 3;
    std::size_t absent_patterns = 20;
};

struct Instance {
    UncertainString u;
    Prob tau_min;
    bool correlated;
};

/// Deterministic random instance for `seed`.
Instance random_instance(std::uint64_t seed, const SuiteConfig& cfg = {});

/// Collection of 1..max_docs strings with total length <= max_total.
DocumentCollection random_collection(std::uint64_t seed, std::size_t max_docs, std::size_t max_total,
                                     const SuiteConfig& cfg = {});

/// Probe patterns: every aligned string of length <= max_pattern with
/// probability >= tau_min, every substring of that length range of a few
/// sampled worlds, and `absent_patterns` strings with no occurrence.
std::vector<std::string> probe_patterns(const DocumentCollection& docs, Prob tau_min, std::uint64_t seed,
                                        const SuiteConfig& cfg = {});

/// tau_min, 2*tau_min, ... up to 1.
std::vector<Prob> tau_grid(Prob tau_min);

/// First mismatch as text, or nullopt. `checked` counts compared queries.
std::optional<std::string> check_substring(const UncertainString& u, const SubstringIndex& idx,
                                           const std::vector<std::string>& patterns, std::size_t* checked = nullptr);
std::optional<std::string> check_listing(const DocumentCollection& docs, const ListingIndex& idx,
                                         const std::vector<std::string>& patterns, std::size_t* checked = nullptr);

struct ApproxReport {
    std::optional<std::string> failure;
    std::size_t checked = 0;
    Prob max_spread = 0.0;          // largest prefix-probability spread inside one link piece
    Prob max_adjacent_step = 0.0;   // largest stored_prob difference between consecutive pieces of a chain
    Prob max_unforced_step = 0.0;   // same, over steps not forced by a single symbol dropping more than epsilon
    std::size_t forced_steps = 0;   // consecutive pieces whose step exceeds epsilon because of one symbol
    std::size_t adjacent_pairs = 0;
};

/// Sandwich exact(tau) <= approx(tau) <= exact(tau - epsilon), piece spreads
/// <= epsilon + 1e-12, the unique-link property, and equality with the exact
/// answer when epsilon <= 1e-9.
ApproxReport check_approx(const UncertainString& u, const LinkIndex& idx, const std::vector<std::string>& patterns);

struct SuiteReport {
    std::size_t instances = 0;
    std::size_t queries = 0;
    std::optional<std::string> failure;
};

/// Builds and checks `count` random instances (substring index, conservation
/// for n <= 40, approximate index for each epsilon).
SuiteReport run_suite(std::size_t count, std::uint64_t seed, const SuiteConfig& cfg, const std::vector<Prob>& epsilons,
                      const IndexConfig& index_config = {});

}  // namespace ustr::verify
