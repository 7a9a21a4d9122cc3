#include "k1alex/words.hpp"

#include <cstdlib>
#include <sstream>

namespace k1alex {

std::string to_string(Generator g) {
    return g.is_meridian() ? std::string("m") : "x" + std::to_string(g.index());
}

namespace {

void push_run(std::vector<Letter>& stack, Generator g, long e) {
    if (e == 0) return;
    if (!stack.empty() && stack.back().gen == g) {
        stack.back().exp += e;
        if (stack.back().exp == 0) stack.pop_back();
        return;
    }
    stack.push_back({g, e});
}

}  // namespace

Word Word::reduce(std::span<const Letter> letters, int rank) {
    Word w;
    for (const auto& l : letters) {
        if (l.gen.index() < 0 || (rank > 0 && l.gen.index() > rank))
            throw WordError("unknown generator " + to_string(l.gen));
        push_run(w.runs_, l.gen, l.exp);
    }
    return w;
}

Word Word::generator(Generator g, long exp) {
    Letter l{g, exp};
    return reduce(std::span<const Letter>(&l, 1));
}

std::size_t Word::length() const {
    std::size_t n = 0;
    for (const auto& r : runs_) n += static_cast<std::size_t>(std::labs(r.exp));
    return n;
}

long Word::exponent_sum(Generator g) const {
    long s = 0;
    for (const auto& r : runs_)
        if (r.gen == g) s += r.exp;
    return s;
}

bool Word::contains(Generator g) const {
    for (const auto& r : runs_)
        if (r.gen == g) return true;
    return false;
}

int Word::max_index() const {
    int m = 0;
    for (const auto& r : runs_) m = std::max(m, r.gen.index());
    return m;
}

Word multiply(const Word& a, const Word& b) {
    std::vector<Letter> all(a.runs());
    all.insert(all.end(), b.runs().begin(), b.runs().end());
    return Word::reduce(all);
}

Word invert(const Word& w) {
    std::vector<Letter> out;
    out.reserve(w.runs().size());
    for (auto it = w.runs().rbegin(); it != w.runs().rend(); ++it) out.push_back({it->gen, -it->exp});
    return Word::reduce(out);
}

Word power(const Word& w, long n) {
    Word base = n < 0 ? invert(w) : w;
    Word out;
    for (long k = 0; k < std::labs(n); ++k) out = multiply(out, base);
    return out;
}

Word conjugate(const Word& h, const Word& w) { return multiply(multiply(h, w), invert(h)); }

Word substitute(const Word& w, std::span<const Word> images) {
    Word out;
    for (const auto& r : w.runs()) {
        if (r.gen.is_meridian()) {
            out = multiply(out, Word::generator(r.gen, r.exp));
            continue;
        }
        auto i = static_cast<std::size_t>(r.gen.index());
        if (i > images.size()) throw WordError("substitution has no image for " + to_string(r.gen));
        out = multiply(out, power(images[i - 1], r.exp));
    }
    return out;
}

std::string to_string(const Word& w) {
    if (w.is_identity()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& r : w.runs()) {
        if (!first) os << ' ';
        first = false;
        os << to_string(r.gen);
        if (r.exp != 1) os << '^' << r.exp;
    }
    return os.str();
}

FreeRingElem::FreeRingElem(const Word& w, const mpz_class& c) { add_term(w, c); }

mpz_class FreeRingElem::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void FreeRingElem::add_term(const Word& w, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

FreeRingElem& FreeRingElem::operator+=(const FreeRingElem& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

FreeRingElem& FreeRingElem::operator-=(const FreeRingElem& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

FreeRingElem operator-(const FreeRingElem& a) {
    FreeRingElem out;
    for (const auto& [w, c] : a.terms_) out.terms_.emplace(w, -c);
    return out;
}

FreeRingElem operator*(const FreeRingElem& a, const FreeRingElem& b) {
    FreeRingElem out;
    for (const auto& [u, c] : a.terms_)
        for (const auto& [v, d] : b.terms_) out.add_term(multiply(u, v), c * d);
    return out;
}

FreeRingElem operator*(const Word& w, const FreeRingElem& a) {
    FreeRingElem out;
    for (const auto& [v, c] : a.terms_) out.add_term(multiply(w, v), c);
    return out;
}

FreeRingElem substitute(const FreeRingElem& a, std::span<const Word> images) {
    FreeRingElem out;
    for (const auto& [w, c] : a.terms()) out.add_term(substitute(w, images), c);
    return out;
}

FreeRingElem fox_derivative(const Word& w, Generator g) {
    FreeRingElem d;
    std::vector<Letter> prefix;
    for (const auto& r : w.runs()) {
        if (r.gen == g) {
            // d(g^e) = 1 + g + ... + g^(e-1) for e > 0, -(g^-1 + ... + g^e) for e < 0
            Word p = Word::reduce(prefix);
            if (r.exp > 0) {
                for (long k = 0; k < r.exp; ++k) d.add_term(multiply(p, Word::generator(g, k)), 1);
            } else {
                for (long k = 1; k <= -r.exp; ++k) d.add_term(multiply(p, Word::generator(g, -k)), -1);
            }
        }
        push_run(prefix, r.gen, r.exp);
    }
    return d;
}

std::string to_string(const FreeRingElem& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : a.terms()) {
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (mag != 1) {
            os << mag.get_str();
            if (!w.is_identity()) os << '*';
        }
        if (mag == 1 || !w.is_identity()) os << to_string(w);
    }
    return os.str();
}

}  // namespace k1alex
