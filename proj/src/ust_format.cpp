#include "ustr/ust_format.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "ustr/errors.hpp"

namespace ustr {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

struct Block {
    std::string name;
    std::size_t header_line = 0;
    std::vector<PositionDistribution> positions;
    std::vector<std::size_t> position_lines;
    std::vector<Correlation> correlations;
    std::vector<std::size_t> correlation_lines;
};

class Parser {
public:
    explicit Parser(std::string file) : file_(std::move(file)) {}

    void line(std::string_view raw) {
        ++line_no_;
        const std::size_t hash = raw.find('#');
        const auto words = split_words(hash == std::string_view::npos ? raw : raw.substr(0, hash));
        if (words.empty()) return;
        const std::string_view head = words[0];
        if (head == "ustr") {
            if (open_) fail("'ustr' inside block '" + block_.name + "' (missing 'end')");
            if (words.size() != 2) fail("expected 'ustr <name>'");
            block_ = Block{};
            block_.name = std::string(words[1]);
            block_.header_line = line_no_;
            open_ = true;
        } else if (head == "pos") {
            require_open(head);
            position(words);
        } else if (head == "corr") {
            require_open(head);
            correlation(words);
        } else if (head == "end") {
            require_open(head);
            if (words.size() != 1) fail("unexpected text after 'end'");
            close();
        } else {
            fail("unknown directive '" + std::string(head) + "'");
        }
    }

    DocumentCollection finish() {
        if (open_) fail("block '" + block_.name + "' has no 'end'");
        if (docs_.empty()) fail("no 'ustr' blocks");
        return std::move(docs_);
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(file_, line_no_, what); }
    [[noreturn]] void fail_at(std::size_t line, const std::string& what) const { throw ParseError(file_, line, what); }

    void require_open(std::string_view head) const {
        if (!open_) fail("'" + std::string(head) + "' outside a 'ustr' block");
    }

    double number(std::string_view word, const char* what) const {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
        if (ec != std::errc{} || ptr != word.data() + word.size()) {
            fail(std::string("bad ") + what + " '" + std::string(word) + "'");
        }
        return v;
    }

    std::size_t index(std::string_view word) const {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
        if (ec != std::errc{} || ptr != word.data() + word.size()) fail("bad position '" + std::string(word) + "'");
        return v;
    }

    Symbol symbol(std::string_view word) const {
        if (word.size() != 1 || !is_valid_symbol(word[0])) fail("bad symbol '" + std::string(word) + "'");
        return word[0];
    }

    void position(const std::vector<std::string_view>& words) {
        if (words.size() < 2) fail("'pos' needs at least one <sym>:<prob>");
        std::vector<Alternative> alts;
        for (std::size_t k = 1; k < words.size(); ++k) {
            const std::string_view w = words[k];
            const std::size_t colon = w.find(':');
            if (colon == std::string_view::npos) fail("expected <sym>:<prob>, got '" + std::string(w) + "'");
            const Symbol s = symbol(w.substr(0, colon));
            const double p = number(w.substr(colon + 1), "probability");
            if (!(p >= 0.0 && p <= 1.0)) fail("probability outside [0,1] for '" + std::string(1, s) + "'");
            alts.push_back({s, p});
        }
        block_.positions.emplace_back(std::move(alts));
        block_.position_lines.push_back(line_no_);
    }

    void correlation(const std::vector<std::string_view>& words) {
        if (words.size() != 7) fail("expected 'corr <i> <sym_i> <j> <sym_j> <p_plus> <p_minus>'");
        Correlation c;
        c.src_pos = index(words[1]);
        c.src_sym = symbol(words[2]);
        c.cond_pos = index(words[3]);
        c.cond_sym = symbol(words[4]);
        c.p_plus = number(words[5], "p_plus");
        c.p_minus = number(words[6], "p_minus");
        block_.correlations.push_back(c);
        block_.correlation_lines.push_back(line_no_);
    }

    void close() {
        open_ = false;
        if (!names_.insert(block_.name).second) fail_at(block_.header_line, "duplicate name '" + block_.name + "'");
        UncertainString u(block_.name, std::move(block_.positions), std::move(block_.correlations));
        const auto violations = validate(u);
        if (!violations.empty()) {
            const Violation& v = violations.front();
            std::size_t at = block_.header_line;
            if (v.rule.find("correlat") != std::string::npos || v.rule.find("conditioning") != std::string::npos) {
                for (std::size_t k = 0; k < u.correlations().size(); ++k) {
                    if (u.correlations()[k].src_pos == v.position) {
                        at = block_.correlation_lines[k];
                        break;
                    }
                }
                if (at == block_.header_line && !block_.correlation_lines.empty()) at = block_.correlation_lines.front();
            } else if (v.position >= 1 && v.position <= block_.position_lines.size()) {
                at = block_.position_lines[v.position - 1];
            }
            fail_at(at, "position " + std::to_string(v.position) + ": " + v.rule);
        }
        docs_.push_back(std::move(u));
    }

    std::string file_;
    std::size_t line_no_ = 0;
    bool open_ = false;
    Block block_;
    DocumentCollection docs_;
    std::unordered_set<std::string> names_;
};

}  // namespace

DocumentCollection read_ust(std::istream& in, const std::string& file_name) {
    Parser parser(file_name);
    std::string line;
    while (std::getline(in, line)) parser.line(line);
    return parser.finish();
}

DocumentCollection read_ust_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return read_ust(in, path);
}

DocumentCollection parse_ust(std::string_view text, const std::string& file_name) {
    std::istringstream in{std::string(text)};
    return read_ust(in, file_name);
}

std::string format_prob(double p) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p);
    return std::string(buf, ptr);
}

void write_ust(std::ostream& out, const DocumentCollection& docs) {
    for (const auto& u : docs) {
        out << "ustr " << u.name() << '\n';
        for (const auto& pd : u.positions()) {
            out << "pos";
            for (const auto& a : pd.entries()) out << ' ' << a.symbol << ':' << format_prob(a.prob);
            out << '\n';
        }
        for (const auto& c : u.correlations()) {
            out << "corr " << c.src_pos << ' ' << c.src_sym << ' ' << c.cond_pos << ' ' << c.cond_sym << ' '
                << format_prob(c.p_plus) << ' ' << format_prob(c.p_minus) << '\n';
        }
        out << "end\n";
    }
}

void write_ust_file(const std::string& path, const DocumentCollection& docs) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_ust(out, docs);
    if (!out) throw Error("write failed for " + path);
}

}  // namespace ustr
