#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ustr/model.hpp"

namespace ustr {

struct GenConfig {
    double theta = 0.2;                  // fraction of uncertain positions
    std::size_t choices = 5;             // alternatives kept per uncertain position (>= 2)
    std::size_t edit_radius = 4;         // window radius and max edits per neighbour
    std::size_t neighborhood_samples = 200;
    std::uint64_t seed = 1;
    std::string alphabet;                // substitution letters; empty: the corpus letters
    std::size_t correlations = 0;        // random pairwise correlations to inject
};

/// Seeded 64-bit Mersenne Twister with platform-independent mappings.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n); n > 0.
    std::size_t below(std::size_t n);
    /// Uniform in [0, 1).
    double unit();
    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

/// Uncertain string from a deterministic corpus: round(theta*n) positions get
/// the normalised letter frequencies seen at that position across sampled
/// edit neighbours of the surrounding window, truncated to `choices` letters.
/// Throws std::invalid_argument for an empty corpus or bad config.
UncertainString generate(std::string_view corpus, const GenConfig& cfg, std::string name = "s");

/// Uniform random string over `alphabet`.
std::string random_corpus(std::size_t length, std::string_view alphabet, std::uint64_t seed);

/// Cuts `corpus` into pieces with normally distributed lengths, clamped to
/// [min_len, max_len]; the last piece keeps the remainder.
std::vector<std::string> chunk_corpus(std::string_view corpus, double mean, double stddev, std::size_t min_len,
                                      std::size_t max_len, std::uint64_t seed);

}  // namespace ustr
