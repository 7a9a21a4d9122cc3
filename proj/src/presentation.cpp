#include "k1alex/presentation.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace k1alex {

MetaRep trivial_rep(int genus, long N) {
    auto g = make_group({});
    return MetaRep{std::make_shared<const GroupAut>(GroupAut::identity(g)),
                   std::vector<FiniteAbelianGroup::Element>(static_cast<std::size_t>(2 * genus), 0), N};
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

void check_presentation(const MeridianPresentation& p) {
    if (p.genus < 1) throw ValidationError("genus must be positive");
    const auto n = static_cast<std::size_t>(p.rank());
    if (p.y.size() != n || p.z.size() != n)
        throw ValidationError("rank mismatch: genus " + std::to_string(p.genus) + " needs " + std::to_string(n) +
                              " relators");
    for (const auto* side : {&p.y, &p.z})
        for (const auto& w : *side) {
            if (w.contains(Generator::meridian())) throw ValidationError("meridian letter inside a relator word");
            if (w.max_index() > p.rank()) throw ValidationError("generator out of range in " + to_string(w));
        }
}

namespace {

class LineScanner {
public:
    LineScanner(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    std::size_t column() const { return pos_ + 1; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column(), what); }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void expect_word(std::string_view w) {
        skip_space();
        if (text_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
        pos_ += w.size();
    }

    long integer(bool allow_sign) {
        skip_space();
        std::size_t start = pos_;
        if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (digits == pos_) {
            pos_ = start;
            fail("expected an integer");
        }
        long v = 0;
        const char* b = text_.data() + (text_[start] == '+' ? start + 1 : start);
        auto [ptr, ec] = std::from_chars(b, text_.data() + pos_, v);
        if (ec != std::errc()) {
            pos_ = start;
            fail("integer out of range");
        }
        return v;
    }

    Word word(int rank) {
        if (peek() == '1') {
            ++pos_;
            return Word();
        }
        std::vector<Letter> letters;
        while (true) {
            char c = peek();
            if (c == 'm') fail("meridian letter not allowed in a relator word");
            if (c != 'x') break;
            std::size_t col = column();
            ++pos_;
            long idx = integer(false);
            if (idx < 1 || idx > rank)
                throw ParseError(line_, col,
                                 "generator out of range: x" + std::to_string(idx) + " (rank " + std::to_string(rank) + ")");
            long e = 1;
            if (peek() == '^') {
                ++pos_;
                e = integer(true);
            }
            letters.push_back({Generator::x(static_cast<int>(idx)), e});
        }
        if (letters.empty()) fail("expected a word");
        return Word::reduce(letters, rank);
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace

MeridianPresentation parse_presentation(std::string_view text) {
    MeridianPresentation p;
    std::vector<std::optional<Word>> ys, zs;
    bool have_genus = false;
    std::size_t line_no = 0, relators = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        LineScanner sc(line, line_no);
        if (sc.at_end()) continue;
        if (!have_genus) {
            sc.expect_word("genus");
            long g = sc.integer(false);
            if (g < 1 || g > 1000) sc.fail("genus must be a positive integer");
            if (!sc.at_end()) sc.fail("unexpected text after genus");
            p.genus = static_cast<int>(g);
            ys.assign(static_cast<std::size_t>(2 * g), std::nullopt);
            zs.assign(ys.size(), std::nullopt);
            have_genus = true;
            continue;
        }
        const int rank = p.rank();
        auto slot = [&](char side, std::vector<std::optional<Word>>& store) -> std::optional<Word>& {
            sc.expect(side);
            std::size_t col = sc.column();
            long idx = sc.integer(false);
            if (idx < 1 || idx > rank) throw ParseError(line_no, col, std::string(1, side) + " index out of range");
            auto& s = store[static_cast<std::size_t>(idx - 1)];
            if (s) throw ParseError(line_no, col, std::string("duplicate ") + side + std::to_string(idx));
            return s;
        };
        auto& ys_slot = slot('y', ys);
        sc.expect('=');
        ys_slot = sc.word(rank);
        sc.expect(';');
        auto& zs_slot = slot('z', zs);
        sc.expect('=');
        zs_slot = sc.word(rank);
        if (!sc.at_end()) sc.fail("unexpected text after relator");
        ++relators;
    }
    if (!have_genus) throw ParseError(line_no, 1, "missing genus header");
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!ys[i] || !zs[i])
            throw ParseError(line_no, 1,
                             "rank mismatch: genus " + std::to_string(p.genus) + " needs " + std::to_string(ys.size()) +
                                 " relators, found " + std::to_string(relators));
        p.y.push_back(*ys[i]);
        p.z.push_back(*zs[i]);
    }
    return p;
}

std::string serialize(const MeridianPresentation& p) {
    std::ostringstream os;
    os << "genus " << p.genus << '\n';
    for (std::size_t i = 0; i < p.y.size(); ++i)
        os << 'y' << i + 1 << " = " << to_string(p.y[i]) << " ; z" << i + 1 << " = " << to_string(p.z[i]) << '\n';
    return os.str();
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"3_1", "4_1", "5_2"};
    return names;
}

MeridianPresentation builtin(std::string_view name) {
    static const char* trefoil = "genus 1\ny1 = x1 x2^-1 ; z1 = x1\ny2 = x2 ; z2 = x2 x1^-1\n";
    static const char* figure_eight = "genus 1\ny1 = x1 x2 ; z1 = x1\ny2 = x2 x1 x2 ; z2 = x2\n";
    static const char* five_two = "genus 1\ny1 = x1^-2 ; z1 = x2 x1^-2\ny2 = x1^-1 x2 ; z2 = x2\n";
    MeridianPresentation p;
    if (name == "3_1")
        p = parse_presentation(trefoil);
    else if (name == "4_1")
        p = parse_presentation(figure_eight);
    else if (name == "5_2")
        p = parse_presentation(five_two);
    else
        throw ValidationError("unknown knot: " + std::string(name));
    p.name = std::string(name);
    return p;
}

std::string to_string(const NielsenMove& mv) {
    switch (mv.kind) {
        case NielsenMove::Kind::swap: return "swap(" + std::to_string(mv.i) + "," + std::to_string(mv.j) + ")";
        case NielsenMove::Kind::invert: return "invert(" + std::to_string(mv.i) + ")";
        case NielsenMove::Kind::left_multiply:
            return "left-multiply(" + std::to_string(mv.i) + "," + std::to_string(mv.j) + ")";
        case NielsenMove::Kind::right_multiply:
            return "right-multiply(" + std::to_string(mv.i) + "," + std::to_string(mv.j) + ")";
    }
    return "?";
}

namespace {

void check_move(const NielsenMove& mv, int rank) {
    if (mv.i < 1 || mv.i > rank || mv.j < 1 || mv.j > rank) throw ValidationError("Nielsen move index out of range");
    if (mv.kind != NielsenMove::Kind::invert && mv.i == mv.j) throw ValidationError("Nielsen move needs i != j");
}

std::vector<Word> basis(int rank) {
    std::vector<Word> b;
    for (int k = 1; k <= rank; ++k) b.push_back(Word::generator(Generator::x(k)));
    return b;
}

}  // namespace

std::vector<Word> nielsen_new_in_old(const NielsenMove& mv, int rank) {
    check_move(mv, rank);
    auto b = basis(rank);
    auto xi = b[mv.i - 1], xj = b[mv.j - 1];
    switch (mv.kind) {
        case NielsenMove::Kind::swap: std::swap(b[mv.i - 1], b[mv.j - 1]); break;
        case NielsenMove::Kind::invert: b[mv.i - 1] = invert(xi); break;
        case NielsenMove::Kind::left_multiply: b[mv.i - 1] = multiply(xj, xi); break;
        case NielsenMove::Kind::right_multiply: b[mv.i - 1] = multiply(xi, xj); break;
    }
    return b;
}

std::vector<Word> nielsen_old_in_new(const NielsenMove& mv, int rank) {
    check_move(mv, rank);
    auto b = basis(rank);
    auto xi = b[mv.i - 1], xj = b[mv.j - 1];
    switch (mv.kind) {
        case NielsenMove::Kind::swap: std::swap(b[mv.i - 1], b[mv.j - 1]); break;
        case NielsenMove::Kind::invert: b[mv.i - 1] = invert(xi); break;
        case NielsenMove::Kind::left_multiply: b[mv.i - 1] = multiply(invert(xj), xi); break;
        case NielsenMove::Kind::right_multiply: b[mv.i - 1] = multiply(xi, invert(xj)); break;
    }
    return b;
}

std::vector<NielsenMove> inverse_moves(const NielsenMove& mv) {
    switch (mv.kind) {
        case NielsenMove::Kind::swap:
        case NielsenMove::Kind::invert: return {mv};
        case NielsenMove::Kind::left_multiply:
        case NielsenMove::Kind::right_multiply:
            return {NielsenMove::invert(mv.j), mv, NielsenMove::invert(mv.j)};
    }
    return {};
}

MeridianPresentation apply_nielsen(const MeridianPresentation& p, const NielsenMove& mv) {
    auto sub = nielsen_old_in_new(mv, p.rank());
    MeridianPresentation out{p.genus, {}, {}, p.name};
    for (const auto& w : p.y) out.y.push_back(substitute(w, sub));
    for (const auto& w : p.z) out.z.push_back(substitute(w, sub));
    return out;
}

FiniteAbelianGroup::Element evaluate(const MetaRep& r, const Word& w) {
    const auto& g = *r.group();
    FiniteAbelianGroup::Element e = g.identity();
    for (const auto& l : w.runs()) {
        if (l.gen.is_meridian()) throw ValidationError("meridian letter has no image in H");
        auto i = static_cast<std::size_t>(l.gen.index());
        if (i > r.images.size()) throw ValidationError("generator without image: " + to_string(l.gen));
        e = g.add(e, g.scale(r.images[i - 1], l.exp));
    }
    return e;
}

MetaRep transport_rep(const MetaRep& r, const NielsenMove& mv) {
    MetaRep out = r;
    auto words = nielsen_new_in_old(mv, static_cast<int>(r.images.size()));
    for (std::size_t k = 0; k < words.size(); ++k) out.images[k] = evaluate(r, words[k]);
    return out;
}

MeridianPresentation conjugate_presentation(const MeridianPresentation& p, const Word& h) {
    MeridianPresentation out{p.genus, {}, {}, p.name};
    for (const auto& w : p.y) out.y.push_back(conjugate(h, w));
    for (const auto& w : p.z) out.z.push_back(conjugate(h, w));
    return out;
}

std::optional<RepViolation> validate_rep(const MeridianPresentation& p, const MetaRep& r) {
    if (!r.kappa) throw ValidationError("representation has no automorphism");
    if (r.images.size() != static_cast<std::size_t>(p.rank()))
        throw ValidationError("rank mismatch: presentation has " + std::to_string(p.rank()) + " generators, rep has " +
                              std::to_string(r.images.size()) + " images");
    const auto& g = *r.group();
    for (auto e : r.images)
        if (e >= g.order()) throw ValidationError("image outside H");
    for (std::size_t i = 0; i < p.y.size(); ++i) {
        auto lhs = r.kappa->apply(evaluate(r, p.y[i]));
        auto rhs = evaluate(r, p.z[i]);
        if (lhs != rhs)
            return RepViolation{static_cast<int>(i + 1), "kappa(rho(y" + std::to_string(i + 1) + ")) = " +
                                                             g.monomial(lhs) + " but rho(z" + std::to_string(i + 1) +
                                                             ") = " + g.monomial(rhs)};
    }
    return std::nullopt;
}

}  // namespace k1alex
