#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace k1alex {

/// A free generator: x_i for index >= 1, the meridian m for index 0.
class Generator {
public:
    constexpr Generator() = default;
    constexpr explicit Generator(int index) : index_(index) {}

    static constexpr Generator meridian() { return Generator(0); }
    static constexpr Generator x(int i) { return Generator(i); }

    constexpr int index() const { return index_; }
    constexpr bool is_meridian() const { return index_ == 0; }

    friend constexpr auto operator<=>(Generator, Generator) = default;

private:
    int index_ = 0;
};

std::string to_string(Generator g);

/// One run of a word: gen^exp with exp != 0.
struct Letter {
    Generator gen;
    long exp = 1;

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

class WordError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Freely reduced word, stored as maximal runs.
class Word {
public:
    Word() = default;

    /// Freely reduces an arbitrary run sequence. With rank > 0 every x_i must
    /// satisfy i <= rank; the meridian is always accepted.
    static Word reduce(std::span<const Letter> letters, int rank = 0);
    static Word generator(Generator g, long exp = 1);

    const std::vector<Letter>& runs() const { return runs_; }
    bool is_identity() const { return runs_.empty(); }
    /// Number of letters counted with multiplicity.
    std::size_t length() const;
    long exponent_sum(Generator g) const;
    bool contains(Generator g) const;
    int max_index() const;

    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Letter> runs_;
};

Word multiply(const Word& a, const Word& b);
Word invert(const Word& w);
Word power(const Word& w, long n);
Word conjugate(const Word& h, const Word& w);  // h w h^-1

/// Replaces x_i by images[i-1]; the meridian is left alone.
Word substitute(const Word& w, std::span<const Word> images);

std::string to_string(const Word& w);

/// Element of Z[F]: finite sum of words with nonzero integer coefficients.
class FreeRingElem {
public:
    FreeRingElem() = default;
    explicit FreeRingElem(const Word& w, const mpz_class& c = 1);

    const std::map<Word, mpz_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    mpz_class coefficient(const Word& w) const;

    void add_term(const Word& w, const mpz_class& c);

    FreeRingElem& operator+=(const FreeRingElem& o);
    FreeRingElem& operator-=(const FreeRingElem& o);

    friend FreeRingElem operator+(FreeRingElem a, const FreeRingElem& b) { return a += b; }
    friend FreeRingElem operator-(FreeRingElem a, const FreeRingElem& b) { return a -= b; }
    friend FreeRingElem operator-(const FreeRingElem& a);
    friend FreeRingElem operator*(const FreeRingElem& a, const FreeRingElem& b);
    friend FreeRingElem operator*(const Word& w, const FreeRingElem& a);
    friend bool operator==(const FreeRingElem&, const FreeRingElem&) = default;

private:
    std::map<Word, mpz_class> terms_;
};

/// Ring extension of substitute(): applied word by word.
FreeRingElem substitute(const FreeRingElem& a, std::span<const Word> images);

/// Left Fox derivative d w / d g.
FreeRingElem fox_derivative(const Word& w, Generator g);

std::string to_string(const FreeRingElem& a);

}  // namespace k1alex
