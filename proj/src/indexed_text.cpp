#include "ustr/indexed_text.hpp"

namespace ustr {

std::shared_ptr<const IndexedText> IndexedText::build(TransformedText tt) {
    auto out = std::make_shared<IndexedText>();
    out->sa = SuffixArrayIndex(std::vector<Code>(tt.text().begin(), tt.text().end()));
    out->tree = TreeView(out->sa);
    out->tt = std::move(tt);
    return out;
}

}  // namespace ustr
