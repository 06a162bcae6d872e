#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ustr/approx.hpp"
#include "ustr/listing.hpp"
#include "ustr/model.hpp"
#include "ustr/qindex.hpp"

namespace ustr {

inline constexpr std::uint32_t kContainerFormatVersion = 1;

/// Everything `build` writes: the source collection plus whichever indexes
/// were requested. Indexes over the same text share it on disk.
struct IndexContainer {
    std::uint32_t format_version = kContainerFormatVersion;
    Prob tau_min = 0.1;
    std::optional<Prob> epsilon;
    std::optional<Metric> metric;
    DocumentCollection docs;
    std::optional<SubstringIndex> substring;
    std::optional<ListingIndex> listing;
    std::optional<LinkIndex> approx;
};

/// Binary file: the magic "USTRIDX\0", a little-endian uint32 version, then
/// a portable binary archive of the container.
void save_container(const std::string& path, const IndexContainer& c);
IndexContainer load_container(const std::string& path);

}  // namespace ustr
