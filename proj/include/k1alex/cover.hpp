#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "k1alex/metarep.hpp"
#include "k1alex/presentation.hpp"

namespace k1alex {

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const mpz_class& f);
    /// col[dst] += f * col[src]
    void add_col(std::size_t dst, std::size_t src, const mpz_class& f);
    void negate_row(std::size_t r);

    bool is_diagonal() const;
    std::string to_string() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpz_class> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
mpz_class determinant(const IntMatrix& a);

/// U * A * V = D. U_inv is U^-1, kept for change of basis on the cokernel.
struct SNFResult {
    IntMatrix U;
    IntMatrix U_inv;
    IntMatrix D;
    IntMatrix V;

    /// Diagonal entries d_1 | d_2 | ... (zeros last), length min(rows, cols).
    std::vector<mpz_class> diagonal() const;
};

SNFResult smith_normal_form(const IntMatrix& a);

/// Relation matrix of H_1 of the N-fold cyclic cover (minus the meridian lift)
/// as a Z[t]/(t^N - 1)-module: row (i, l) stands for e_i t^l, column (j, k)
/// for the relation t^k (t y_j - z_j) abelianized. Index (i, l) -> i*N + l.
IntMatrix alexander_presentation(const MeridianPresentation& p, long N);

struct CoverData {
    MetaRep rep;
    std::vector<mpz_class> invariant_factors;  // all SNF diagonal entries
    std::size_t free_rank = 0;                 // reported, not part of H
};

/// Throws ValidationError if the deck action does not descend to the torsion
/// subgroup or the result fails validate_rep.
CoverData cover_data(const MeridianPresentation& p, long N);
MetaRep metabelian_rep(const MeridianPresentation& p, long N);

}  // namespace k1alex
