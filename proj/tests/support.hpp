#pragma once

#include <random>
#include <vector>

#include "k1alex/grouprings.hpp"
#include "k1alex/novikov.hpp"
#include "k1alex/presentation.hpp"
#include "k1alex/words.hpp"

namespace k1alex::testing {

inline Word random_word(std::mt19937_64& rng, int rank, std::size_t max_len, bool meridian = false) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> gen(meridian ? 0 : 1, rank);
    std::bernoulli_distribution sign;
    std::vector<Letter> letters;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) letters.push_back({Generator(gen(rng)), sign(rng) ? 1 : -1});
    return Word::reduce(letters);
}

inline GroupAlgebraElem random_elem(std::mt19937_64& rng, const GroupPtr& group, int max_terms = 4, int range = 3) {
    std::uniform_int_distribution<std::size_t> elem(0, group->order() - 1);
    std::uniform_int_distribution<int> coeff(-range, range);
    std::uniform_int_distribution<int> terms(0, max_terms);
    std::uniform_int_distribution<int> den(1, 3);
    GroupAlgebraElem a(group);
    for (int i = terms(rng); i > 0; --i) a += GroupAlgebraElem(group, elem(rng), mpq_class(coeff(rng), den(rng)));
    return a;
}

/// A unit of Q[H]: a nonzero multiple of a group element.
inline GroupAlgebraElem random_unit_monomial(std::mt19937_64& rng, const GroupPtr& group) {
    std::uniform_int_distribution<std::size_t> elem(0, group->order() - 1);
    std::uniform_int_distribution<int> coeff(1, 4);
    std::bernoulli_distribution sign;
    return GroupAlgebraElem(group, elem(rng), mpq_class(sign(rng) ? coeff(rng) : -coeff(rng), coeff(rng)));
}

inline NovikovSeries random_series(std::mt19937_64& rng, const AutPtr& kappa, bool truncate, bool unit_lead = false) {
    std::uniform_int_distribution<long> deg(-2, 2), len(1, 5);
    std::vector<GroupAlgebraElem> coeffs;
    const long n = len(rng);
    coeffs.push_back(unit_lead ? random_unit_monomial(rng, kappa->group()) : random_elem(rng, kappa->group()));
    for (long i = 1; i < n; ++i) coeffs.push_back(random_elem(rng, kappa->group()));
    const long d = deg(rng);
    if (!truncate) return NovikovSeries::polynomial(kappa, d, coeffs);
    std::uniform_int_distribution<long> extra(2, 8);
    return NovikovSeries::truncated(kappa, d, coeffs, d + extra(rng));
}

inline NovikovSeries random_witt(std::mt19937_64& rng, const AutPtr& kappa) {
    std::uniform_int_distribution<long> len(1, 4);
    std::vector<GroupAlgebraElem> coeffs{GroupAlgebraElem::one(kappa->group())};
    for (long i = len(rng); i > 0; --i) coeffs.push_back(random_elem(rng, kappa->group(), 3, 2));
    return NovikovSeries::polynomial(kappa, 0, coeffs);
}

/// Random move on a genus-1 presentation.
inline NielsenMove random_move(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3), idx(1, 2);
    const int i = idx(rng), j = 3 - i;
    switch (kind(rng)) {
        case 0: return NielsenMove::swap(i, j);
        case 1: return NielsenMove::invert(i);
        case 2: return NielsenMove::left_multiply(i, j);
        default: return NielsenMove::right_multiply(i, j);
    }
}

}  // namespace k1alex::testing
