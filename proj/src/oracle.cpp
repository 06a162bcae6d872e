#include "ustr/oracle.hpp"

#include <algorithm>

namespace ustr::oracle {

std::vector<Prob> profile(const UncertainString& u, std::string_view p) {
    std::vector<Prob> out;
    if (p.empty() || p.size() > u.size()) return out;
    for (std::size_t i = 1; i + p.size() <= u.size() + 1; ++i) out.push_back(occurrence_probability(u, p, i));
    return out;
}

std::vector<std::size_t> search(const UncertainString& u, std::string_view p, Prob tau) {
    std::vector<std::size_t> out;
    if (p.empty() || p.size() > u.size()) return out;
    for (std::size_t i = 1; i + p.size() <= u.size() + 1; ++i) {
        if (meets(occurrence_probability(u, p, i), tau)) out.push_back(i);
    }
    return out;
}

Prob document_relevance(const UncertainString& d, std::string_view p, Metric metric, Prob floor) {
    if (p.empty() || p.size() > d.size()) return 0.0;
    std::vector<Prob> probs;
    for (std::size_t i = 1; i + p.size() <= d.size() + 1; ++i) {
        const Prob q = occurrence_probability(d, p, i);
        if (q > 0.0 && (floor <= 0.0 || meets(q, floor))) probs.push_back(q);
    }
    if (probs.empty()) return 0.0;
    switch (metric) {
        case Metric::maximum:
            return *std::max_element(probs.begin(), probs.end());
        case Metric::or_formula: {
            if (probs.size() == 1) return probs.front();
            Prob sum = 0.0;
            Prob product = 1.0;
            for (Prob q : probs) {
                sum += q;
                product *= q;
            }
            return sum - product;
        }
        case Metric::or_independent: {
            Prob miss = 1.0;
            for (Prob q : probs) miss *= 1.0 - q;
            return 1.0 - miss;
        }
    }
    return 0.0;
}

std::vector<std::size_t> list(const DocumentCollection& docs, std::string_view p, Prob tau, Metric metric,
                              Prob floor) {
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const Prob rel = document_relevance(docs[d], p, metric, floor);
        if (rel > 0.0 && meets(rel, tau)) out.push_back(d);
    }
    return out;
}

}  // namespace ustr::oracle
