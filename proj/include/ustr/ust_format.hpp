#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "ustr/model.hpp"

namespace ustr {

/// UST text format:
///
///   ustr <name>
///   pos <sym>:<prob> [<sym>:<prob> ...]      one line per position
///   corr <i> <sym_i> <j> <sym_j> <p_plus> <p_minus>
///   end
///
/// '#' starts a comment; several blocks form a collection. Each block is
/// validated; violations are reported as ParseError with the offending line.
DocumentCollection read_ust(std::istream& in, const std::string& file_name = "");
DocumentCollection read_ust_file(const std::string& path);
DocumentCollection parse_ust(std::string_view text, const std::string& file_name = "");

void write_ust(std::ostream& out, const DocumentCollection& docs);
void write_ust_file(const std::string& path, const DocumentCollection& docs);

/// Shortest decimal text that parses back to the same double.
std::string format_prob(double p);

}  // namespace ustr
