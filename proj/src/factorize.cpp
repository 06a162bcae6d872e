#include "ustr/factorize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ustr/errors.hpp"

namespace ustr {

namespace {

// A correlated symbol whose conditioning position lies ahead of the current
// end of the window: it contributes the marginal until the window reaches it.
struct Pending {
    const Correlation* corr;
    Prob marginal;
    Prob bound;
};

struct Frame {
    std::size_t choice = 0;
    Prob determined = 1.0;  // product of factors whose value is fixed
    Prob prob = 1.0;
    bool qualifies = false;
    bool below_qualifies = false;
    std::vector<Pending> pending;
};

void check_tau(Prob tau_min) {
    if (!(tau_min > kProbTolerance && tau_min <= 1.0)) {
        throw std::invalid_argument("tau_min must lie in (" + std::to_string(kProbTolerance) + ", 1], got " +
                                    std::to_string(tau_min));
    }
}

}  // namespace

std::vector<MaximalFactor> maximal_factors(const UncertainString& u, Prob tau_min, std::size_t start) {
    check_tau(tau_min);
    std::vector<MaximalFactor> out;
    const std::size_t n = u.size();
    if (start < 1 || start > n) return out;

    std::string current;
    std::vector<Frame> stack(1);
    while (!stack.empty()) {
        const std::size_t depth = stack.size() - 1;
        const std::size_t pos = start + depth;
        Frame& top = stack.back();
        if (pos <= n && top.choice < u.at(pos).size()) {
            const Alternative alt = u.at(pos).entries()[top.choice++];
            Frame child;
            child.determined = top.determined;
            child.pending.reserve(top.pending.size() + 1);
            for (const Pending& pd : top.pending) {
                if (pd.corr->cond_pos == pos) {
                    child.determined *= alt.symbol == pd.corr->cond_sym ? pd.corr->p_plus : pd.corr->p_minus;
                } else {
                    child.pending.push_back(pd);
                }
            }
            const Correlation* c = u.correlation_for(pos, alt.symbol);
            if (c == nullptr) {
                child.determined *= alt.prob;
            } else if (c->cond_pos < start) {
                child.determined *= u.marginal(pos, alt.symbol);
            } else if (c->cond_pos < pos) {
                child.determined *= current[c->cond_pos - start] == c->cond_sym ? c->p_plus : c->p_minus;
            } else {
                child.pending.push_back({c, u.marginal(pos, alt.symbol), std::max(c->p_plus, c->p_minus)});
            }
            Prob prob = child.determined;
            Prob bound = child.determined;
            for (const Pending& pd : child.pending) {
                prob *= pd.marginal;
                bound *= pd.bound;
            }
            if (!meets(bound, tau_min)) continue;
            child.prob = prob;
            child.qualifies = meets(prob, tau_min);
            current.push_back(alt.symbol);
            stack.push_back(std::move(child));
            continue;
        }
        if (depth == 0) break;
        if (top.qualifies && !top.below_qualifies) out.push_back({start, current, top.prob});
        const bool any = top.qualifies || top.below_qualifies;
        stack.pop_back();
        current.pop_back();
        stack.back().below_qualifies |= any;
    }
    return out;
}

Prob TransformedText::window_probability(std::size_t offset, std::size_t len) const {
    if (len == 0) return 1.0;
    const std::size_t last = offset + len - 1;
    if (last >= text_.size() || pos_[offset] == 0 || pos_[last] != pos_[offset] + len - 1 ||
        doc_of(offset) != doc_of(last)) {
        throw RangeError("window [" + std::to_string(offset) + ", " + std::to_string(last + 1) +
                         ") is not inside one factor");
    }
    const Prob denom = offset == 0 || cum_[offset - 1] < 0.0 ? 1.0 : cum_[offset - 1];
    Prob p = cum_[last] / denom;
    auto it = std::lower_bound(corrections_.begin(), corrections_.end(), offset,
                               [](const CorrectionEntry& e, std::size_t o) { return e.offset < o; });
    const std::size_t first_pos = pos_[offset];
    const std::size_t last_pos = pos_[last];
    for (; it != corrections_.end() && it->offset <= last; ++it) {
        Prob value = it->marginal;
        if (it->cond_pos >= first_pos && it->cond_pos <= last_pos) {
            value = text_[offset + (it->cond_pos - first_pos)] == it->cond_code ? it->p_plus : it->p_minus;
        }
        p *= value / it->base;
    }
    return p;
}

std::size_t TransformedText::memory_bytes() const noexcept {
    return text_.size() * sizeof(Code) + pos_.size() * 4 + doc_.size() * 4 + cum_.size() * sizeof(Prob) +
           factors_.size() * sizeof(FactorRecord) + corrections_.size() * sizeof(CorrectionEntry) +
           doc_base_.size() * sizeof(std::uint64_t);
}

std::size_t default_length_cap(std::size_t n, Prob tau_min) {
    const double cap = 64.0 * static_cast<double>(n) / (tau_min * tau_min);
    const double hard = static_cast<double>(std::numeric_limits<std::uint32_t>::max() / 2);
    return static_cast<std::size_t>(std::min(cap, hard));
}

TransformedText transform(const UncertainString& u, Prob tau_min, const FactorizeOptions& options) {
    return transform_collection(DocumentCollection{u}, tau_min, options);
}

TransformedText transform_collection(const DocumentCollection& docs, Prob tau_min, const FactorizeOptions& options) {
    check_tau(tau_min);
    std::size_t total_n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> jobs;  // (doc, start)
    for (std::size_t d = 0; d < docs.size(); ++d) {
        total_n += docs[d].size();
        for (std::size_t i = 1; i <= docs[d].size(); ++i) {
            jobs.emplace_back(static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(i));
        }
    }
    const std::size_t hard_cap = std::numeric_limits<std::uint32_t>::max() / 2;
    const std::size_t cap = std::min(options.length_cap.value_or(default_length_cap(total_n, tau_min)), hard_cap);

    std::vector<std::vector<MaximalFactor>> found(jobs.size());
    std::atomic<std::size_t> length{0};
    std::atomic<bool> over{false};
    const long long job_count = static_cast<long long>(jobs.size());

    auto run = [&](long long j) {
        if (over.load(std::memory_order_relaxed)) return;
        const auto [d, i] = jobs[static_cast<std::size_t>(j)];
        found[j] = maximal_factors(docs[d], tau_min, i);
        std::size_t add = 0;
        for (const auto& f : found[j]) add += f.symbols.size() + 1;
        if (length.fetch_add(add, std::memory_order_relaxed) + add > cap) over.store(true);
    };
    if (options.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long long j = 0; j < job_count; ++j) run(j);
    } else {
        for (long long j = 0; j < job_count; ++j) run(j);
    }
    if (over.load()) {
        throw CapacityError("length-cap", "transformed text exceeds the length cap of " + std::to_string(cap) +
                                              " symbols (raise --length-cap or tau_min)");
    }

    TransformedText tt;
    tt.tau_min_ = tau_min;
    const std::size_t total = length.load();
    tt.text_.reserve(total);
    tt.pos_.reserve(total);
    tt.cum_.reserve(total);
    if (docs.size() > 1) tt.doc_.reserve(total);
    std::uint64_t base = 0;
    for (const auto& d : docs) {
        tt.doc_base_.push_back(base);
        base += d.size();
    }
    tt.total_positions_ = base;

    Code separator = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const auto [d, start] = jobs[j];
        const UncertainString& u = docs[d];
        for (const auto& f : found[j]) {
            const auto offset = static_cast<std::uint32_t>(tt.text_.size());
            tt.factors_.push_back({offset, static_cast<std::uint32_t>(f.symbols.size()), d, start, f.prob});
            tt.max_factor_length_ = std::max(tt.max_factor_length_, f.symbols.size());
            Prob running = 1.0;
            for (std::size_t k = 0; k < f.symbols.size(); ++k) {
                const std::size_t pos = start + k;
                const Symbol sym = f.symbols[k];
                const Prob b = u.at(pos).prob_of(sym);
                running *= b;
                if (const Correlation* c = u.correlation_for(pos, sym)) {
                    tt.corrections_.push_back({static_cast<std::uint32_t>(tt.text_.size()),
                                               static_cast<std::uint32_t>(c->cond_pos), symbol_code(c->cond_sym),
                                               c->p_plus, c->p_minus, u.marginal(pos, sym), b});
                }
                tt.text_.push_back(symbol_code(sym));
                tt.pos_.push_back(static_cast<std::uint32_t>(pos));
                tt.cum_.push_back(running);
                if (docs.size() > 1) tt.doc_.push_back(d);
            }
            tt.text_.push_back(separator++);
            tt.pos_.push_back(0);
            tt.cum_.push_back(-1.0);
            if (docs.size() > 1) tt.doc_.push_back(d);
        }
        std::vector<MaximalFactor>().swap(found[j]);
    }
    return tt;
}

TransformedText without_factor(const TransformedText& tt, std::size_t k) {
    if (k >= tt.factors_.size()) throw RangeError("factor index " + std::to_string(k) + " out of range");
    const FactorRecord gone = tt.factors_[k];
    const std::size_t begin = gone.offset;
    const std::size_t width = gone.length + 1;  // with its separator

    TransformedText out = tt;
    auto cut = [&](auto& v) {
        if (v.empty()) return;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(begin + width));
    };
    cut(out.text_);
    cut(out.pos_);
    cut(out.doc_);
    cut(out.cum_);
    out.factors_.erase(out.factors_.begin() + static_cast<std::ptrdiff_t>(k));
    for (auto& f : out.factors_) {
        if (f.offset > begin) f.offset -= static_cast<std::uint32_t>(width);
    }
    std::vector<CorrectionEntry> kept;
    for (auto e : out.corrections_) {
        if (e.offset >= begin && e.offset < begin + width) continue;
        if (e.offset > begin) e.offset -= static_cast<std::uint32_t>(width);
        kept.push_back(e);
    }
    out.corrections_ = std::move(kept);
    out.max_factor_length_ = 0;
    for (const auto& f : out.factors_) out.max_factor_length_ = std::max<std::size_t>(out.max_factor_length_, f.length);
    return out;
}

namespace {

std::optional<ConservationFailure> check_document(const UncertainString& u, std::size_t doc, Prob tau_min,
                                                  const TransformedText& tt) {
    const std::size_t n = u.size();
    const auto text = tt.text();
    const auto pos = tt.pos();

    std::vector<std::vector<std::size_t>> at_pos(n + 1);
    for (std::size_t o = 0; o < tt.size(); ++o) {
        if (pos[o] != 0 && tt.doc_of(o) == doc) at_pos[pos[o]].push_back(o);
    }

    auto matches_at = [&](std::size_t o, const std::string& p) {
        for (std::size_t k = 0; k < p.size(); ++k) {
            const std::size_t q = o + k;
            if (q >= text.size() || is_separator(text[q]) || text[q] != symbol_code(p[k])) return false;
        }
        return true;
    };

    for (std::size_t i = 1; i <= n; ++i) {
        for (const auto& w : aligned_strings(u, i, tau_min, n - i + 1)) {
            bool seen = false;
            Prob got = 0.0;
            for (std::size_t o : at_pos[i]) {
                if (!matches_at(o, w.text)) continue;
                got = tt.window_probability(o, w.text.size());
                seen = true;
                if (std::abs(got - w.prob) <= kProbTolerance) break;
            }
            if (!seen) return ConservationFailure{doc, w.text, i, "aligned string missing from the transformed text"};
            if (std::abs(got - w.prob) > kProbTolerance) {
                return ConservationFailure{doc, w.text, i,
                                           "window probability " + std::to_string(got) + " differs from " +
                                               std::to_string(w.prob)};
            }
        }
    }

    for (const auto& f : tt.factors()) {
        if (f.doc != doc) continue;
        const std::string symbols = decode_text(text.subspan(f.offset, f.length));
        for (std::size_t a = 0; a < f.length; ++a) {
            for (std::size_t len = 1; a + len <= f.length; ++len) {
                const Prob got = tt.window_probability(f.offset + a, len);
                const Prob want = occurrence_probability(u, std::string_view(symbols).substr(a, len), f.start + a);
                if (std::abs(got - want) > kProbTolerance) {
                    return ConservationFailure{doc, symbols.substr(a, len), f.start + a,
                                               "window of t gives " + std::to_string(got) + ", model gives " +
                                                   std::to_string(want)};
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<ConservationFailure> conservation_check(const UncertainString& u, Prob tau_min,
                                                      const TransformedText& tt) {
    return check_document(u, 0, tau_min, tt);
}

std::optional<ConservationFailure> conservation_check(const DocumentCollection& docs, Prob tau_min,
                                                      const TransformedText& tt) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (auto failure = check_document(docs[d], d, tau_min, tt)) return failure;
    }
    return std::nullopt;
}

}  // namespace ustr
