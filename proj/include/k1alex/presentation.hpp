#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "k1alex/metarep.hpp"
#include "k1alex/words.hpp"

namespace k1alex {

/// <x_1..x_2g, m | m y_i m^-1 = z_i>, with y_i, z_i words in the x_i only.
struct MeridianPresentation {
    int genus = 1;
    std::vector<Word> y;
    std::vector<Word> z;
    std::string name;

    int rank() const { return 2 * genus; }
    friend bool operator==(const MeridianPresentation& a, const MeridianPresentation& b) {
        return a.genus == b.genus && a.y == b.y && a.z == b.z;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checks |y| = |z| = 2g, generator ranges and absence of the meridian.
void check_presentation(const MeridianPresentation& p);

MeridianPresentation parse_presentation(std::string_view text);
std::string serialize(const MeridianPresentation& p);

const std::vector<std::string>& builtin_names();
MeridianPresentation builtin(std::string_view name);

struct NielsenMove {
    enum class Kind { swap, invert, left_multiply, right_multiply };
    Kind kind = Kind::swap;
    int i = 1;
    int j = 2;

    static NielsenMove swap(int i, int j) { return {Kind::swap, i, j}; }
    static NielsenMove invert(int i) { return {Kind::invert, i, i}; }
    /// x_i' = x_j x_i
    static NielsenMove left_multiply(int i, int j) { return {Kind::left_multiply, i, j}; }
    /// x_i' = x_i x_j
    static NielsenMove right_multiply(int i, int j) { return {Kind::right_multiply, i, j}; }
};

std::string to_string(const NielsenMove& mv);

/// New generators x_k' written in the old ones.
std::vector<Word> nielsen_new_in_old(const NielsenMove& mv, int rank);
/// Old generators x_k written in the new ones.
std::vector<Word> nielsen_old_in_new(const NielsenMove& mv, int rank);
/// Moves whose composite undoes mv.
std::vector<NielsenMove> inverse_moves(const NielsenMove& mv);

MeridianPresentation apply_nielsen(const MeridianPresentation& p, const NielsenMove& mv);
/// Images of the new generators after apply_nielsen(p, mv).
MetaRep transport_rep(const MetaRep& r, const NielsenMove& mv);

/// y_i -> h y_i h^-1 and z_i -> h z_i h^-1; the presentation of the same group
/// with meridian h m h^-1. Any MetaRep valid for p stays valid.
MeridianPresentation conjugate_presentation(const MeridianPresentation& p, const Word& h);

/// rho applied to a word in the x_i.
FiniteAbelianGroup::Element evaluate(const MetaRep& r, const Word& w);

struct RepViolation {
    int index;  // 1-based relator index
    std::string detail;
};

/// First i with kappa(rho(y_i)) != rho(z_i). Throws ValidationError on rank mismatch.
std::optional<RepViolation> validate_rep(const MeridianPresentation& p, const MetaRep& r);

}  // namespace k1alex
