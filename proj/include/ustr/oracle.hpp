#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ustr/listing.hpp"
#include "ustr/model.hpp"

/// Brute-force references built only on model operations.
namespace ustr::oracle {

/// Occurrence probability of `p` at every start 1..n-|p|+1 (index i-1).
std::vector<Prob> profile(const UncertainString& u, std::string_view p);

/// Every start whose occurrence probability reaches tau, ascending.
std::vector<std::size_t> search(const UncertainString& u, std::string_view p, Prob tau);

/// Documents whose relevance reaches tau. Relevance aggregates the
/// occurrences with probability >= floor (floor 0: every nonzero one).
std::vector<std::size_t> list(const DocumentCollection& docs, std::string_view p, Prob tau, Metric metric,
                              Prob floor = 0.0);

/// Relevance of one document by exhaustive scan.
Prob document_relevance(const UncertainString& d, std::string_view p, Metric metric, Prob floor = 0.0);

}  // namespace ustr::oracle
